#include "nis/group_scad.hpp"

#include "nis/joint_fit.hpp"
#include "nis/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace nis {

double scad_penalty(double x, double lambda, double a) {
  if (x <= lambda) return lambda * x;
  if (x <= a * lambda) return (2.0 * a * lambda * x - x * x - lambda * lambda) / (2.0 * (a - 1.0));
  return lambda * lambda * (a + 1.0) / 2.0;
}

double scad_derivative(double x, double lambda, double a) {
  if (x <= lambda) return lambda;
  return std::max(a * lambda - x, 0.0) / (a - 1.0);
}

Mat gram_matrix(const BasisDesign& bd) {
  return (bd.b.transpose() * bd.b) / static_cast<double>(bd.n());
}

double group_norm(const Vec& gamma, const Mat& gram) {
  return std::sqrt(std::max(0.0, gamma.dot(gram * gamma)));
}

namespace {

// Shared state for one lambda sweep: full design blocks and their cross
// products, computed once.
struct Precomp {
  const Vec* y = nullptr;
  std::vector<int> cand;  // sorted unique candidates
  Mat z;                  // n x L(1+m): [B | x_c1.B | x_c2.B | ...]
  Mat zz;                 // Z^T Z / n
  Vec zy;                 // Z^T Y / n
  Mat gram;               // (1/n) B^T B
  Vec intercept_coef;     // intercept-only fit, for the all-dropped state
  Vec intercept_fitted;
  int n = 0, L = 0;
};

Precomp precompute(const Vec& y, const BasisDesign& bd, const Mat& x,
                   const std::vector<int>& cand, const InterceptFit& ic) {
  Precomp pre;
  pre.y = &y;
  pre.cand = cand;
  pre.n = bd.n();
  pre.L = bd.basis_size();
  const int m = static_cast<int>(cand.size());
  pre.z.resize(pre.n, pre.L * (1 + m));
  pre.z.leftCols(pre.L) = bd.b;
  for (int i = 0; i < m; ++i)
    pre.z.middleCols(pre.L * (1 + i), pre.L) = x.col(cand[i]).asDiagonal() * bd.b;
  pre.zz = (pre.z.transpose() * pre.z) / static_cast<double>(pre.n);
  pre.zy = (pre.z.transpose() * y) / static_cast<double>(pre.n);
  pre.gram = gram_matrix(bd);
  pre.intercept_coef = ic.coef;
  pre.intercept_fitted = ic.fitted;
  return pre;
}

struct State {
  std::vector<int> act;  // positions into pre.cand still alive
  Vec gamma0;
  Mat gammas;            // L x |act|
};

// groups' fitted values and penalized objective for the current state
void evaluate(const Precomp& pre, const State& st, double lambda, double a, Vec& fitted,
              double& rss_mean, double& objective) {
  const int L = pre.L;
  fitted = pre.z.leftCols(L) * st.gamma0;
  for (std::size_t i = 0; i < st.act.size(); ++i)
    fitted += pre.z.middleCols(L * (1 + st.act[i]), L) * st.gammas.col(static_cast<int>(i));
  rss_mean = (*pre.y - fitted).squaredNorm() / pre.n;
  objective = rss_mean;
  for (int i = 0; i < st.gammas.cols(); ++i)
    objective += scad_penalty(group_norm(st.gammas.col(i), pre.gram), lambda, a);
}

LqaFit lqa_run(const Precomp& pre, const VCCoef& init, double lambda, const ScadConfig& cfg) {
  const int L = pre.L;
  const int m = static_cast<int>(pre.cand.size());
  LqaFit out;

  State st;
  st.act.resize(m);
  std::iota(st.act.begin(), st.act.end(), 0);
  st.gamma0 = init.gamma0;
  st.gammas = init.gammas;
  std::vector<double> init_norm(m);
  for (int i = 0; i < m; ++i)
    init_norm[i] = std::max(group_norm(init.gammas.col(i), pre.gram), 1e-12);

  Vec fitted;
  double rss = 0.0, obj = 0.0;
  evaluate(pre, st, lambda, cfg.a, fitted, rss, obj);
  out.objectives.push_back(obj);
  double obj_prev = obj;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    // quadratic-approximation weights at the current group norms
    const int k = static_cast<int>(st.act.size());
    std::vector<double> weight(k);
    for (int i = 0; i < k; ++i) {
      const double norm = std::max(group_norm(st.gammas.col(i), pre.gram), cfg.norm_floor);
      weight[i] = scad_derivative(norm, lambda, cfg.a) / (2.0 * norm);
    }

    std::vector<int> idx;
    idx.reserve(L * (1 + k));
    for (int c = 0; c < L; ++c) idx.push_back(c);
    for (const int i : st.act)
      for (int c = 0; c < L; ++c) idx.push_back(L * (1 + i) + c);

    Mat a = pre.zz(idx, idx);
    for (int i = 0; i < k; ++i)
      a.block(L * (1 + i), L * (1 + i), L, L) += weight[i] * pre.gram;
    const Vec rhs = pre.zy(idx);

    Vec coef = a.ldlt().solve(rhs);
    if (!coef.allFinite()) {
      Mat jittered = a;
      jittered.diagonal().array() += 1e-10 * std::max(a.diagonal().mean(), 1e-12);
      coef = jittered.ldlt().solve(rhs);
      if (!coef.allFinite()) {
        out.failed = true;
        out.failure = "quadratic subproblem solve produced non-finite coefficients";
        break;
      }
    }

    st.gamma0 = coef.head(L);
    Mat gnew(L, k);
    for (int i = 0; i < k; ++i) gnew.col(i) = coef.segment(L * (1 + i), L);

    // permanent drop of groups that collapsed relative to their initial norm
    std::vector<int> keep;
    for (int i = 0; i < k; ++i)
      if (group_norm(gnew.col(i), pre.gram) >= cfg.drop_ratio * init_norm[st.act[i]])
        keep.push_back(i);
    std::vector<int> act_next;
    Mat gkept(L, static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
      act_next.push_back(st.act[keep[i]]);
      gkept.col(static_cast<int>(i)) = gnew.col(keep[i]);
    }
    st.act = std::move(act_next);
    st.gammas = std::move(gkept);
    if (st.act.empty()) st.gamma0 = pre.intercept_coef;

    evaluate(pre, st, lambda, cfg.a, fitted, rss, obj);
    out.objectives.push_back(obj);
    out.iterations = iter + 1;
    if (std::abs(obj_prev - obj) <= cfg.tol * std::max(std::abs(obj_prev), 1e-12)) {
      out.converged = true;
      break;
    }
    obj_prev = obj;
  }

  if (!out.failed) {
    out.coef.members.reserve(st.act.size());
    for (const int i : st.act) out.coef.members.push_back(pre.cand[i]);
    out.coef.gamma0 = st.gamma0;
    out.coef.gammas = st.gammas;
    out.fitted = fitted;
    out.rss_mean = rss;
    out.objective = obj;
  }
  return out;
}

ScadModel intercept_only_model(const Precomp& pre) {
  ScadModel model;
  model.coef.members = {};
  model.coef.gamma0 = pre.intercept_coef;
  model.coef.gammas.resize(pre.L, 0);
  model.fitted = pre.intercept_fitted;
  model.sigma2 = (*pre.y - model.fitted).squaredNorm() / pre.n;
  model.bic = pre.n * std::log(std::max(model.sigma2, 1e-300));
  return model;
}

}  // namespace

LqaFit lqa_solve(const Vec& y, const BasisDesign& bd, const Mat& x,
                 std::span<const int> candidates, const VCCoef& init, double lambda,
                 const ScadConfig& cfg) {
  std::vector<int> cand(candidates.begin(), candidates.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const InterceptFit ic = fit_intercept(y, bd, ScreenOptions{});
  const Precomp pre = precompute(y, bd, x, cand, ic);
  return lqa_run(pre, init, lambda, cfg);
}

ScadModel fit_group_scad(const Vec& y, const BasisDesign& bd, const Mat& x,
                         std::span<const int> candidates, const ScadConfig& cfg) {
  ScreenOptions ls_opt;
  const InterceptFit ic = fit_intercept(y, bd, ls_opt);

  // Canonical candidate list and shared initial (unpenalized) fit.
  const JointFit initial = fit_joint(y, bd, x, candidates, ls_opt);
  const std::vector<int>& cand = initial.coef.members;
  const Precomp pre = precompute(y, bd, x, cand, ic);
  if (cand.empty()) return intercept_only_model(pre);

  // Lambda grid anchored at the group-KKT bound for the all-zero state.
  const Vec r0 = y - ic.fitted;
  Eigen::LLT<Mat> gram_llt(pre.gram);
  if (gram_llt.info() != Eigen::Success)
    throw NumericError("basis Gram matrix is not positive definite");
  double lambda_max = 0.0;
  for (const int j : cand) {
    const Vec v = (2.0 / pre.n) * (bd.b.transpose() * x.col(j).cwiseProduct(r0));
    const double dual = gram_llt.matrixL().solve(v).norm();
    lambda_max = std::max(lambda_max, dual);
  }
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) return intercept_only_model(pre);

  std::vector<double> grid = cfg.lambda_grid;
  if (grid.empty()) {
    const int num = std::max(cfg.num_lambda, 1);
    for (int i = 0; i < num; ++i) {
      const double frac = num == 1 ? 0.0 : static_cast<double>(i) / (num - 1);
      grid.push_back(lambda_max * std::pow(cfg.lambda_min_ratio, frac));
    }
  } else {
    std::sort(grid.begin(), grid.end(), std::greater<>());
  }

  const int num = static_cast<int>(grid.size());
  std::vector<LqaFit> fits(num);
  const int workers = resolve_workers(cfg.workers);
#pragma omp parallel for schedule(static) num_threads(workers)
  for (int i = 0; i < num; ++i) {
    try {
      fits[i] = lqa_run(pre, initial.coef, grid[i], cfg);
    } catch (const std::exception& e) {
      fits[i].failed = true;
      fits[i].failure = e.what();
    }
  }

  ScadModel model;
  model.lambda_grid = grid;
  model.bic_curve.assign(num, std::numeric_limits<double>::quiet_NaN());
  int best = -1;
  double best_bic = std::numeric_limits<double>::infinity();
  const double logn = std::log(static_cast<double>(pre.n));
  for (int i = 0; i < num; ++i) {
    if (cfg.record_objectives) model.objective_curves.push_back(fits[i].objectives);
    if (fits[i].failed) continue;
    const double k = static_cast<double>(fits[i].coef.members.size());
    const double bic = pre.n * std::log(std::max(fits[i].rss_mean, 1e-300)) + k * pre.L * logn;
    model.bic_curve[i] = bic;
    if (bic < best_bic) {  // strict: ties keep the larger lambda
      best_bic = bic;
      best = i;
    }
  }
  if (best < 0) {
    std::string detail = fits.empty() ? "empty grid" : fits[0].failure;
    throw AllLambdaFailed("all " + std::to_string(num) + " lambda values failed (" + detail + ")");
  }
  model.coef = fits[best].coef;
  model.fitted = fits[best].fitted;
  model.lambda = grid[best];
  model.bic = best_bic;
  model.sigma2 = fits[best].rss_mean;
  return model;
}

}  // namespace nis
