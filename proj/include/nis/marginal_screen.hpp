#pragma once

#include "nis/spline_basis.hpp"
#include "nis/types.hpp"

#include <span>
#include <vector>

namespace nis {

/// Options shared by the spline least-squares fits.
struct ScreenOptions {
  double cond_threshold = 1e10;  // condition estimate that triggers the fallback
  bool ridge_fallback = true;    // if false, ill-conditioned designs throw SingularDesign
  bool standardize = false;      // center/scale covariate columns before fitting
  int workers = 0;               // 0 = NIS_WORKERS env or OpenMP default
};

/// Basis design rows evaluated on one exposure sample; shared by every
/// marginal fit against that sample.
struct BasisDesign {
  Mat b;  // n x L, row i = basis values at w_i

  int n() const { return static_cast<int>(b.rows()); }
  int basis_size() const { return static_cast<int>(b.cols()); }
};

BasisDesign make_basis_design(const SplineBasis& basis, const Vec& w);

/// Intercept-only fit: Y on the basis block alone.
struct InterceptFit {
  Vec coef;           // L
  Vec fitted;         // n
  double norm2 = 0;   // ||fitted||^2_n
  bool ridged = false;
};

InterceptFit fit_intercept(const Vec& y, const BasisDesign& bd, const ScreenOptions& opt = {});

/// One marginal fit of Y on [B, x_j . B].
struct MarginalFit {
  Vec coef;           // 2L: intercept-function block then slope-function block
  Vec fitted;         // n
  double u = 0;       // marginal utility ||fitted||^2_n - ||a0||^2_n
  double v = 0;       // marginal residual sum of squares / n
  bool ridged = false;
};

MarginalFit fit_marginal(const Vec& y, const BasisDesign& bd, const Vec& xj,
                         const ScreenOptions& opt = {});

/// Marginal utilities of `candidates` for response y (empty in, empty out).
/// Parallelized over candidates; a covariate whose fit fails beyond every
/// fallback scores -infinity. Entry i corresponds to candidates[i].
std::vector<double> marginal_utilities(const Vec& y, const BasisDesign& bd, const Mat& x,
                                       std::span<const int> candidates,
                                       const ScreenOptions& opt = {});

/// Full screening pass over every covariate.
struct ScreenReport {
  std::vector<double> u;     // marginal utilities
  std::vector<double> v;     // marginal RSS/n
  std::vector<int> ranking;  // covariate indices by decreasing u, ties by index
  std::vector<int> flagged;  // covariates that needed the ridge fallback or failed
  double ynorm2 = 0;         // ||Y||^2_n
  double null_norm2 = 0;     // ||a0||^2_n
};

ScreenReport screen_all(const Dataset& data, const SplineBasis& basis,
                        const ScreenOptions& opt = {});

/// Indices 0..p-1 ordered by decreasing utility, ties by ascending index.
std::vector<int> ranking_by_utility(std::span<const double> u);

/// Smallest prefix of `ranking` containing every member of `truth`.
int minimum_model_size(std::span<const int> ranking, std::span<const int> truth);

/// Classic linear independence screening scores |corr(x_j, y)|, for
/// side-by-side minimum-model-size comparisons.
std::vector<double> sis_scores(const Vec& y, const Mat& x);

}  // namespace nis
