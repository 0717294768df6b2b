#include "nis/joint_fit.hpp"

#include "nis/detail/ls.hpp"

#include <algorithm>

namespace nis {

JointFit fit_joint(const Vec& y, const BasisDesign& bd, const Mat& x,
                   std::span<const int> members, const ScreenOptions& opt) {
  std::vector<int> m(members.begin(), members.end());
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  for (const int j : m)
    if (j < 0 || j >= x.cols())
      throw NisError("joint fit member " + std::to_string(j) + " out of range");

  const int n = bd.n(), L = bd.basis_size();
  const int k = static_cast<int>(m.size());
  Mat z(n, L * (1 + k));
  z.leftCols(L) = bd.b;
  for (int i = 0; i < k; ++i)
    z.middleCols(L * (1 + i), L) = x.col(m[i]).asDiagonal() * bd.b;

  JointFit fit;
  const Vec coef = detail::solve_ls(z, y, opt, fit.ridged);
  fit.coef.members = std::move(m);
  fit.coef.gamma0 = coef.head(L);
  fit.coef.gammas.resize(L, k);
  for (int i = 0; i < k; ++i) fit.coef.gammas.col(i) = coef.segment(L * (1 + i), L);
  fit.fitted = z * coef;
  return fit;
}

Vec predict(const VCCoef& coef, const SplineBasis& basis, const Vec& w, const Mat& x) {
  const int n = static_cast<int>(w.size());
  const int k = static_cast<int>(coef.members.size());
  for (const int j : coef.members)
    if (j < 0 || j >= x.cols())
      throw NisError("prediction member " + std::to_string(j) + " out of range");
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    const Vec b = basis.eval(w[i]);
    double f = b.dot(coef.gamma0);
    for (int m = 0; m < k; ++m) f += x(i, coef.members[m]) * b.dot(coef.gammas.col(m));
    out[i] = f;
  }
  return out;
}

}  // namespace nis
