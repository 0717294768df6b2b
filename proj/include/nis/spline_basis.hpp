#pragma once

#include "nis/types.hpp"

#include <span>
#include <vector>

namespace nis {

/// Normalized B-spline basis on the empirical range of an exposure sample.
///
/// The knot vector repeats each boundary value degree+1 times and places the
/// remaining num_basis - degree - 1 interior knots at equally spaced empirical
/// quantiles (type-7 interpolation) of the build sample. The num_basis
/// functions are indexed 0..num_basis-1, are locally supported (at most
/// degree+1 are nonzero at any point) and sum to one on [wmin, wmax].
class SplineBasis {
 public:
  /// Builds a basis from an exposure sample.
  ///
  /// Throws InvalidBasisSize when num_basis < degree+1 or the sample is too
  /// small (n < num_basis + 2); DegenerateExposure when the sample range
  /// collapses, an interior quantile lands on the boundary, or an interior
  /// value repeats more than degree times.
  static SplineBasis build(std::span<const double> w, int num_basis, int degree = 3);

  int num_basis() const { return num_basis_; }
  int degree() const { return degree_; }
  double wmin() const { return knots_[degree_]; }
  double wmax() const { return knots_[num_basis_]; }
  const std::vector<double>& knots() const { return knots_; }

  /// Values of all basis functions at w. Out-of-support w is clamped to
  /// [wmin, wmax] first (the convention used for held-out prediction).
  Vec eval(double w) const;

  /// Design matrix with rows eval(w[i]); n x num_basis.
  Mat design(std::span<const double> w) const;

 private:
  SplineBasis(std::vector<double> knots, int num_basis, int degree)
      : knots_(std::move(knots)), num_basis_(num_basis), degree_(degree) {}

  /// Index i with knots[i] <= w < knots[i+1], clamped to valid spans.
  int find_span(double w) const;

  std::vector<double> knots_;  // size num_basis + degree + 1
  int num_basis_;
  int degree_;
};

/// Type-7 empirical quantile (linear interpolation) of a sorted sample.
double quantile_sorted(std::span<const double> sorted, double prob);

}  // namespace nis
