#pragma once

#include "nis/types.hpp"

#include <vector>

namespace nis::reference {

/// Textbook Cox-de Boor evaluation: order-1 indicator functions on the knot
/// intervals (last nonempty interval closed on the right), then the two-term
/// ratio recurrence with the 0/0 := 0 convention. Deliberately independent of
/// SplineBasis::eval. Out-of-support w is clamped.
std::vector<double> bspline_recursive(const std::vector<double>& knots, int degree,
                                      int num_basis, double w);

/// Clamped quantile knot vector built from scratch (sorts its own copy,
/// type-7 quantiles). Independent of SplineBasis::build.
std::vector<double> quantile_knots(std::vector<double> w, int num_basis, int degree);

/// Dense least squares min ||a c - b||_2 via explicitly formed normal
/// equations solved by Gaussian elimination with partial pivoting. Plain
/// nested-vector storage, no linear-algebra library involved.
std::vector<double> solve_least_squares(const std::vector<std::vector<double>>& a,
                                        const std::vector<double>& b);

/// Serial marginal screening over all covariates built entirely from the
/// routines above: per-covariate utility u_j = ||fitted_j||^2_n - ||a0||^2_n.
/// Oracle for the library's screen path and baseline for the benchmark.
std::vector<double> screen_utilities_serial(const Dataset& data, int num_basis, int degree);

}  // namespace nis::reference
