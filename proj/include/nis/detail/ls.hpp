#pragma once

#include "nis/marginal_screen.hpp"
#include "nis/types.hpp"

namespace nis::detail {

/// Least squares min ||q c - y|| by column-pivoted QR. When the R-diagonal
/// condition estimate exceeds opt.cond_threshold (or the solution is not
/// finite), falls back to ridge-jittered normal equations and sets `ridged`;
/// with the fallback disabled this throws SingularDesign instead.
Vec solve_ls(const Mat& q, const Vec& y, const ScreenOptions& opt, bool& ridged);

/// Marginal fit reusing a precomputed intercept-only fitted norm.
MarginalFit fit_marginal_given_null(const Vec& y, const BasisDesign& bd, const Vec& xj,
                                    double null_norm2, const ScreenOptions& opt);

/// Column copy standardized to mean zero, unit sample variance (no-op scale
/// when the column is constant).
Vec standardized_column(const Vec& xj);

}  // namespace nis::detail
