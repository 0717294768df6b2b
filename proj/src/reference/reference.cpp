#include "nis/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace nis::reference {

std::vector<double> bspline_recursive(const std::vector<double>& knots, int degree,
                                      int num_basis, double w) {
  const std::size_t m = knots.size();
  const double lo = knots[degree];
  const double hi = knots[m - degree - 1];
  if (w < lo) w = lo;
  if (w > hi) w = hi;

  // Degree-0 indicators; the nonempty interval ending at hi is closed.
  std::vector<double> val(m - 1, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (knots[i] <= w && w < knots[i + 1]) val[i] = 1.0;
    else if (w == hi && knots[i] < hi && knots[i + 1] == hi) val[i] = 1.0;
  }

  for (int k = 1; k <= degree; ++k) {
    for (std::size_t i = 0; i + k + 1 < m; ++i) {
      double acc = 0.0;
      const double d1 = knots[i + k] - knots[i];
      if (d1 > 0.0) acc += (w - knots[i]) / d1 * val[i];
      const double d2 = knots[i + k + 1] - knots[i + 1];
      if (d2 > 0.0) acc += (knots[i + k + 1] - w) / d2 * val[i + 1];
      val[i] = acc;
    }
  }
  val.resize(num_basis);
  return val;
}

std::vector<double> quantile_knots(std::vector<double> w, int num_basis, int degree) {
  std::sort(w.begin(), w.end());
  const std::size_t n = w.size();
  const double lo = w.front(), hi = w.back();
  std::vector<double> knots;
  for (int i = 0; i <= degree; ++i) knots.push_back(lo);
  const int interior = num_basis - degree - 1;
  for (int k = 1; k <= interior; ++k) {
    const double pos = static_cast<double>(k) / (interior + 1) * static_cast<double>(n - 1);
    const std::size_t at = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(at);
    knots.push_back(at + 1 < n ? w[at] * (1.0 - frac) + w[at + 1] * frac : w[n - 1]);
  }
  for (int i = 0; i <= degree; ++i) knots.push_back(hi);
  return knots;
}

std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& a,
                                        const std::vector<double>& b) {
  const std::size_t n = a.size();
  const std::size_t k = a.empty() ? 0 : a[0].size();
  // Normal equations: (a^T a) c = a^T b.
  std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
  std::vector<double> atb(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < k; ++r) {
      const double air = a[i][r];
      if (air == 0.0) continue;
      atb[r] += air * b[i];
      for (std::size_t c = r; c < k; ++c) ata[r][c] += air * a[i][c];
    }
  }
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < r; ++c) ata[r][c] = ata[c][r];

  // Gaussian elimination with partial pivoting on [ata | atb].
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
    if (piv != col) {
      std::swap(ata[piv], ata[col]);
      std::swap(atb[piv], atb[col]);
    }
    const double d = ata[col][col];
    if (d == 0.0) throw NumericError("reference solver: singular normal equations");
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = ata[r][col] / d;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < k; ++c) ata[r][c] -= f * ata[col][c];
      atb[r] -= f * atb[col];
    }
  }
  std::vector<double> coef(k, 0.0);
  for (std::size_t col = k; col-- > 0;) {
    double acc = atb[col];
    for (std::size_t c = col + 1; c < k; ++c) acc -= ata[col][c] * coef[c];
    coef[col] = acc / ata[col][col];
  }
  return coef;
}

namespace {

double fitted_norm2(const std::vector<std::vector<double>>& a, const std::vector<double>& coef) {
  double acc = 0.0;
  for (const auto& row : a) {
    double f = 0.0;
    for (std::size_t c = 0; c < coef.size(); ++c) f += row[c] * coef[c];
    acc += f * f;
  }
  return acc / static_cast<double>(a.size());
}

}  // namespace

std::vector<double> screen_utilities_serial(const Dataset& data, int num_basis, int degree) {
  const int n = data.n(), p = data.p();
  std::vector<double> wv(data.w.data(), data.w.data() + n);
  const auto knots = quantile_knots(wv, num_basis, degree);

  std::vector<std::vector<double>> basis(n);
  for (int i = 0; i < n; ++i) basis[i] = bspline_recursive(knots, degree, num_basis, data.w[i]);

  std::vector<double> y(data.y.data(), data.y.data() + n);
  const auto coef0 = solve_least_squares(basis, y);
  const double null_norm2 = fitted_norm2(basis, coef0);

  std::vector<double> u(p, 0.0);
  std::vector<std::vector<double>> design(n, std::vector<double>(2 * num_basis));
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < num_basis; ++k) {
        design[i][k] = basis[i][k];
        design[i][num_basis + k] = data.x(i, j) * basis[i][k];
      }
    }
    const auto coef = solve_least_squares(design, y);
    u[j] = fitted_norm2(design, coef) - null_norm2;
  }
  return u;
}

}  // namespace nis::reference
