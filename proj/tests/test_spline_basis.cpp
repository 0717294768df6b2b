#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nis/reference.hpp"
#include "nis/rng.hpp"
#include "nis/spline_basis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using nis::SplineBasis;

namespace {

std::vector<double> uniform_sample(int n, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  nis::Rng rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> w(n);
  for (auto& v : w) v = u(rng);
  return w;
}

// n-choose-k for the Bernstein cross-check.
double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("knot layout: boundaries repeated degree+1 times, quartile interior knots") {
  // 0..100 (101 points): type-7 quartiles of the sorted sample are exact.
  std::vector<double> w(101);
  for (int i = 0; i <= 100; ++i) w[i] = static_cast<double>(i);
  const auto basis = SplineBasis::build(w, 7, 3);
  const auto& t = basis.knots();
  REQUIRE(t.size() == 11);  // L + degree + 1
  for (int i = 0; i < 4; ++i) {
    CHECK(t[i] == 0.0);
    CHECK(t[7 + i] == 100.0);
  }
  CHECK(t[4] == doctest::Approx(25.0).epsilon(1e-14));
  CHECK(t[5] == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(t[6] == doctest::Approx(75.0).epsilon(1e-14));
  CHECK(basis.wmin() == 0.0);
  CHECK(basis.wmax() == 100.0);
}

TEST_CASE("quantile_sorted matches hand-computed type-7 interpolation") {
  const std::vector<double> s{1.0, 2.0, 4.0, 8.0};
  CHECK(nis::quantile_sorted(s, 0.0) == 1.0);
  CHECK(nis::quantile_sorted(s, 1.0) == 8.0);
  // pos = 0.5 * 3 = 1.5 -> between 2 and 4
  CHECK(nis::quantile_sorted(s, 0.5) == doctest::Approx(3.0).epsilon(1e-15));
  // pos = 0.25 * 3 = 0.75 -> 1 + 0.75*(2-1)
  CHECK(nis::quantile_sorted(s, 0.25) == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("partition of unity, nonnegativity and local support") {
  const auto w = uniform_sample(400, 7);
  for (const int L : {4, 7, 12}) {
    const auto basis = SplineBasis::build(w, L, 3);
    for (int i = 0; i <= 1000; ++i) {
      const double at = basis.wmin() + (basis.wmax() - basis.wmin()) * i / 1000.0;
      const nis::Vec v = basis.eval(at);
      REQUIRE(v.size() == L);
      CHECK(std::abs(v.sum() - 1.0) <= 1e-10);
      int first = L, last = -1;
      for (int k = 0; k < L; ++k) {
        CHECK(v[k] >= 0.0);
        if (v[k] != 0.0) {
          first = std::min(first, k);
          last = std::max(last, k);
        }
      }
      CHECK(last - first + 1 <= basis.degree() + 1);  // local support window
    }
  }
}

TEST_CASE("evaluation agrees with the textbook recursion oracle to 1e-12") {
  const auto w = uniform_sample(300, 11, -2.0, 5.0);
  for (const int L : {4, 7, 10}) {
    for (const int degree : {1, 2, 3}) {
      if (L < degree + 1) continue;
      const auto basis = SplineBasis::build(w, L, degree);
      // probe a grid plus the knots themselves (boundary cases included)
      std::vector<double> probes;
      for (int i = 0; i <= 500; ++i)
        probes.push_back(basis.wmin() + (basis.wmax() - basis.wmin()) * i / 500.0);
      probes.insert(probes.end(), basis.knots().begin(), basis.knots().end());
      for (const double at : probes) {
        const nis::Vec mine = basis.eval(at);
        const auto ref = nis::reference::bspline_recursive(basis.knots(), degree, L, at);
        for (int k = 0; k < L; ++k) CHECK(std::abs(mine[k] - ref[k]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("no interior knots reduces to Bernstein polynomials") {
  // L = degree+1 on [0,1]: B_k(t) = C(3,k) t^k (1-t)^(3-k).
  std::vector<double> w{0.0, 0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 1.0};
  const auto basis = SplineBasis::build(w, 4, 3);
  for (const double t : {0.0, 0.2, 0.5, 0.77, 1.0}) {
    const nis::Vec v = basis.eval(t);
    for (int k = 0; k <= 3; ++k) {
      const double expect = binom(3, k) * std::pow(t, k) * std::pow(1.0 - t, 3 - k);
      CHECK(std::abs(v[k] - expect) <= 1e-12);
    }
  }
}

TEST_CASE("boundary values and clamping") {
  const auto w = uniform_sample(100, 3, 2.0, 9.0);
  const auto basis = SplineBasis::build(w, 7, 3);
  const nis::Vec at_min = basis.eval(basis.wmin());
  const nis::Vec at_max = basis.eval(basis.wmax());
  CHECK(at_min[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at_min.tail(6).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(at_max[6] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at_max.head(6).cwiseAbs().maxCoeff() <= 1e-12);
  // out-of-range evaluation clamps
  CHECK((basis.eval(-100.0) - at_min).cwiseAbs().maxCoeff() == 0.0);
  CHECK((basis.eval(1e9) - at_max).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("design() rows equal pointwise evaluation") {
  const auto w = uniform_sample(50, 21);
  const auto basis = SplineBasis::build(w, 6, 3);
  const nis::Mat d = basis.design(w);
  REQUIRE(d.rows() == 50);
  REQUIRE(d.cols() == 6);
  for (int i = 0; i < 50; ++i)
    CHECK((d.row(i).transpose() - basis.eval(w[i])).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build rejects invalid configurations") {
  const auto w = uniform_sample(100, 5);
  CHECK_THROWS_AS((void)SplineBasis::build(w, 3, 3), nis::InvalidBasisSize);   // L < degree+1
  CHECK_THROWS_AS((void)SplineBasis::build(w, -1, 3), nis::InvalidBasisSize);
  std::vector<double> tiny(w.begin(), w.begin() + 6);
  CHECK_THROWS_AS((void)SplineBasis::build(tiny, 7, 3), nis::InvalidBasisSize);  // n < L+2

  std::vector<double> constant(50, 1.25);
  CHECK_THROWS_AS((void)SplineBasis::build(constant, 7, 3), nis::DegenerateExposure);

  // One stray point cannot support interior quantiles: they collapse onto the
  // boundary value.
  std::vector<double> ties(50, 2.0);
  ties[0] = 0.0;
  CHECK_THROWS_AS((void)SplineBasis::build(ties, 7, 3), nis::DegenerateExposure);
}

TEST_CASE("reference quantile knots match the library's construction") {
  const auto w = uniform_sample(257, 13, -4.0, 4.0);
  const auto basis = SplineBasis::build(w, 9, 3);
  const auto ref = nis::reference::quantile_knots(w, 9, 3);
  REQUIRE(ref.size() == basis.knots().size());
  for (std::size_t i = 0; i < ref.size(); ++i)
    CHECK(std::abs(ref[i] - basis.knots()[i]) <= 1e-12);
}
