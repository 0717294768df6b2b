#include "nis/marginal_screen.hpp"

#include "nis/detail/ls.hpp"
#include "nis/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nis {

namespace detail {

Vec solve_ls(const Mat& q, const Vec& y, const ScreenOptions& opt, bool& ridged) {
  Eigen::ColPivHouseholderQR<Mat> qr(q);
  const int k = static_cast<int>(std::min(q.rows(), q.cols()));
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i) {
    const double d = std::abs(qr.matrixR()(i, i));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  const bool well_posed = q.rows() >= q.cols() && dmin > 0.0 &&
                          dmax / dmin <= opt.cond_threshold;
  if (well_posed) {
    Vec coef = qr.solve(y);
    if (coef.allFinite()) return coef;
  }
  if (!opt.ridge_fallback)
    throw SingularDesign("design condition estimate exceeds " +
                         std::to_string(opt.cond_threshold));
  const double n = static_cast<double>(q.rows());
  Mat a = (q.transpose() * q) / n;
  const double jitter = 1e-8 * a.trace() / static_cast<double>(q.cols());
  a.diagonal().array() += (jitter > 0.0 && std::isfinite(jitter)) ? jitter : 1e-12;
  const Vec b = (q.transpose() * y) / n;
  Vec coef = a.ldlt().solve(b);
  if (!coef.allFinite()) throw SingularDesign("ridge-jittered normal equations failed");
  ridged = true;
  return coef;
}

MarginalFit fit_marginal_given_null(const Vec& y, const BasisDesign& bd, const Vec& xj,
                                    double null_norm2, const ScreenOptions& opt) {
  const int n = bd.n(), L = bd.basis_size();
  Mat q(n, 2 * L);
  q.leftCols(L) = bd.b;
  q.rightCols(L) = xj.asDiagonal() * bd.b;
  MarginalFit fit;
  fit.coef = solve_ls(q, y, opt, fit.ridged);
  fit.fitted = q * fit.coef;
  fit.u = fit.fitted.squaredNorm() / n - null_norm2;
  fit.v = (y - fit.fitted).squaredNorm() / n;
  return fit;
}

Vec standardized_column(const Vec& xj) {
  const double n = static_cast<double>(xj.size());
  Vec out = xj.array() - xj.mean();
  const double sd = std::sqrt(out.squaredNorm() / std::max(n - 1.0, 1.0));
  if (sd > 0.0 && std::isfinite(sd)) out /= sd;
  return out;
}

}  // namespace detail

BasisDesign make_basis_design(const SplineBasis& basis, const Vec& w) {
  return BasisDesign{basis.design({w.data(), static_cast<std::size_t>(w.size())})};
}

InterceptFit fit_intercept(const Vec& y, const BasisDesign& bd, const ScreenOptions& opt) {
  InterceptFit fit;
  fit.coef = detail::solve_ls(bd.b, y, opt, fit.ridged);
  fit.fitted = bd.b * fit.coef;
  fit.norm2 = fit.fitted.squaredNorm() / bd.n();
  return fit;
}

MarginalFit fit_marginal(const Vec& y, const BasisDesign& bd, const Vec& xj,
                         const ScreenOptions& opt) {
  const InterceptFit ic = fit_intercept(y, bd, opt);
  const Vec* col = &xj;
  Vec scaled;
  if (opt.standardize) {
    scaled = detail::standardized_column(xj);
    col = &scaled;
  }
  return detail::fit_marginal_given_null(y, bd, *col, ic.norm2, opt);
}

namespace {

// Parallel (u, v, flag) sweep shared by marginal_utilities and screen_all.
struct SweepResult {
  std::vector<double> u, v;
  std::vector<char> flag;
};

SweepResult utility_sweep(const Vec& y, const BasisDesign& bd, const Mat& x,
                          std::span<const int> candidates, double null_norm2,
                          const ScreenOptions& opt) {
  const int m = static_cast<int>(candidates.size());
  SweepResult out{std::vector<double>(m), std::vector<double>(m), std::vector<char>(m, 0)};
  const int workers = resolve_workers(opt.workers);
  std::exception_ptr error;

#pragma omp parallel for schedule(static) num_threads(workers)
  for (int i = 0; i < m; ++i) {
    try {
      Vec col = x.col(candidates[i]);
      if (opt.standardize) col = detail::standardized_column(col);
      const MarginalFit fit = detail::fit_marginal_given_null(y, bd, col, null_norm2, opt);
      const bool ok = std::isfinite(fit.u) && std::isfinite(fit.v);
      out.u[i] = ok ? fit.u : -std::numeric_limits<double>::infinity();
      out.v[i] = ok ? fit.v : std::numeric_limits<double>::infinity();
      out.flag[i] = (!ok || fit.ridged) ? 1 : 0;
    } catch (...) {
      if (opt.ridge_fallback) {
        // Catastrophic failure past every fallback: sentinel, never selected.
        out.u[i] = -std::numeric_limits<double>::infinity();
        out.v[i] = std::numeric_limits<double>::infinity();
        out.flag[i] = 1;
      } else {
#pragma omp critical(nis_sweep_error)
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

std::vector<double> marginal_utilities(const Vec& y, const BasisDesign& bd, const Mat& x,
                                       std::span<const int> candidates,
                                       const ScreenOptions& opt) {
  if (candidates.empty()) return {};
  const InterceptFit ic = fit_intercept(y, bd, opt);
  return utility_sweep(y, bd, x, candidates, ic.norm2, opt).u;
}

ScreenReport screen_all(const Dataset& data, const SplineBasis& basis,
                        const ScreenOptions& opt) {
  const BasisDesign bd = make_basis_design(basis, data.w);
  const InterceptFit ic = fit_intercept(data.y, bd, opt);
  std::vector<int> all(data.p());
  std::iota(all.begin(), all.end(), 0);
  SweepResult sweep = utility_sweep(data.y, bd, data.x, all, ic.norm2, opt);

  ScreenReport report;
  report.u = std::move(sweep.u);
  report.v = std::move(sweep.v);
  report.ranking = ranking_by_utility(report.u);
  for (int j = 0; j < data.p(); ++j)
    if (sweep.flag[j]) report.flagged.push_back(j);
  report.ynorm2 = data.y.squaredNorm() / data.n();
  report.null_norm2 = ic.norm2;
  return report;
}

std::vector<int> ranking_by_utility(std::span<const double> u) {
  std::vector<int> order(u.size());
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int j) {
    return std::isnan(u[j]) ? -std::numeric_limits<double>::infinity() : u[j];
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return key(a) > key(b); });
  return order;
}

int minimum_model_size(std::span<const int> ranking, std::span<const int> truth) {
  if (truth.empty()) return 0;
  int worst = -1;
  for (const int t : truth) {
    const auto it = std::find(ranking.begin(), ranking.end(), t);
    if (it == ranking.end())
      throw NisError("true covariate " + std::to_string(t) + " missing from ranking");
    worst = std::max(worst, static_cast<int>(it - ranking.begin()));
  }
  return worst + 1;
}

std::vector<double> sis_scores(const Vec& y, const Mat& x) {
  const int n = static_cast<int>(y.size()), p = static_cast<int>(x.cols());
  const Vec yc = y.array() - y.mean();
  const double ysd = yc.norm();
  std::vector<double> score(p, 0.0);
  for (int j = 0; j < p; ++j) {
    const Vec xc = x.col(j).array() - x.col(j).mean();
    const double xsd = xc.norm();
    if (xsd > 0.0 && ysd > 0.0) score[j] = std::abs(xc.dot(yc)) / (xsd * ysd);
  }
  return score;
}

}  // namespace nis
