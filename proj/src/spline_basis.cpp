#include "nis/spline_basis.hpp"

#include <algorithm>
#include <cmath>

namespace nis {

double quantile_sorted(std::span<const double> sorted, double prob) {
  const std::size_t n = sorted.size();
  const double pos = prob * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

SplineBasis SplineBasis::build(std::span<const double> w, int num_basis, int degree) {
  if (degree < 0) throw InvalidBasisSize("spline degree must be nonnegative");
  if (num_basis < degree + 1)
    throw InvalidBasisSize("basis size " + std::to_string(num_basis) +
                           " is smaller than degree+1 = " + std::to_string(degree + 1));
  const int n = static_cast<int>(w.size());
  if (n < num_basis + 2)
    throw InvalidBasisSize("sample size " + std::to_string(n) + " too small for " +
                           std::to_string(num_basis) + " basis functions (need n >= L+2)");

  std::vector<double> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  if (!(hi > lo)) throw DegenerateExposure("exposure sample has zero range");

  const int interior = num_basis - degree - 1;
  std::vector<double> knots;
  knots.reserve(num_basis + degree + 1);
  knots.insert(knots.end(), degree + 1, lo);
  for (int k = 1; k <= interior; ++k) {
    const double q = quantile_sorted(sorted, static_cast<double>(k) / (interior + 1));
    if (!(q > lo) || !(q < hi))
      throw DegenerateExposure("interior knot quantile " + std::to_string(k) +
                               " falls on the boundary; exposure too concentrated");
    knots.push_back(q);
  }
  knots.insert(knots.end(), degree + 1, hi);

  // Interior multiplicity above the degree would zero out a basis function.
  for (std::size_t i = degree + 1; i + degree + 1 < knots.size(); ++i) {
    int mult = 1;
    while (i + mult < knots.size() && knots[i + mult] == knots[i]) ++mult;
    if (mult > degree)
      throw DegenerateExposure("interior knot repeated more than degree times");
  }
  return SplineBasis(std::move(knots), num_basis, degree);
}

int SplineBasis::find_span(double w) const {
  if (w >= knots_[num_basis_]) return num_basis_ - 1;
  if (w <= knots_[degree_]) return degree_;
  const auto first = knots_.begin() + degree_;
  const auto last = knots_.begin() + num_basis_ + 1;
  return static_cast<int>(std::upper_bound(first, last, w) - knots_.begin()) - 1;
}

Vec SplineBasis::eval(double w) const {
  const double wc = std::clamp(w, wmin(), wmax());
  const int span = find_span(wc);
  // Triangular scheme over the degree+1 functions alive on this span.
  std::vector<double> left(degree_ + 1), right(degree_ + 1), val(degree_ + 1);
  val[0] = 1.0;
  for (int j = 1; j <= degree_; ++j) {
    left[j] = wc - knots_[span + 1 - j];
    right[j] = knots_[span + j] - wc;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double denom = right[r + 1] + left[j - r];
      const double temp = denom != 0.0 ? val[r] / denom : 0.0;
      val[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    val[j] = saved;
  }
  Vec out = Vec::Zero(num_basis_);
  for (int k = 0; k <= degree_; ++k) out[span - degree_ + k] = val[k];
  return out;
}

Mat SplineBasis::design(std::span<const double> w) const {
  Mat out(static_cast<int>(w.size()), num_basis_);
  for (int i = 0; i < static_cast<int>(w.size()); ++i) out.row(i) = eval(w[i]).transpose();
  return out;
}

}  // namespace nis
