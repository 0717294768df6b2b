#pragma once

#include "nis/marginal_screen.hpp"
#include "nis/types.hpp"

#include <span>

namespace nis {

/// Unpenalized varying-coefficient least squares on a small covariate set:
/// Y ~ B gamma0 + sum_{j in members} (x_j . B) gamma_j.
struct JointFit {
  VCCoef coef;
  Vec fitted;
  bool ridged = false;
};

/// Fits the joint model; `members` is deduplicated and sorted. An empty set
/// reduces to the intercept-only fit.
JointFit fit_joint(const Vec& y, const BasisDesign& bd, const Mat& x,
                   std::span<const int> members, const ScreenOptions& opt = {});

/// Model predictions on new data; exposure values outside the basis support
/// are clamped by the basis evaluation.
Vec predict(const VCCoef& coef, const SplineBasis& basis, const Vec& w, const Mat& x);

}  // namespace nis
