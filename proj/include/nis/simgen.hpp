#pragma once

#include "nis/rng.hpp"
#include "nis/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nis {

/// Synthetic designs. ex1: linear model with constant coefficients and a
/// correlated tail block; ex2: uniform covariates with three varying
/// coefficients; ex3: four varying coefficients, normal covariates with
/// common-factor correlation; ex4: eight varying coefficients, same design.
enum class Example { ex1, ex2, ex3, ex4 };

Example example_from_string(const std::string& name);
std::string to_string(Example e);

struct SimSpec {
  Example example = Example::ex3;
  int n = 400;
  int p = 1000;
  int s = 8;        // ex1 only: number of nonzero +-1 coefficients
  double t1 = 0;    // ex2/ex3/ex4: covariate common-factor weight
  double t2 = 0;    // ex2/ex3/ex4: exposure common-factor weight
  std::uint64_t seed = 0;
};

/// True covariate indices (0-based) of a spec.
std::vector<int> true_support(const SimSpec& spec);

/// Draws one dataset. Covariate names are x1..xp, so selections can be
/// reported the same way for synthetic and file-based data.
Dataset generate(const SimSpec& spec, Rng& rng);

/// Convenience: replicate r uses an independent substream of spec.seed.
Dataset generate_replicate(const SimSpec& spec, int replicate);

/// Monte-Carlo signal-to-noise ratio var(signal)/var(noise) of the spec's
/// generator, using `mc` auxiliary draws.
double snr_estimate(const SimSpec& spec, int mc = 100000);

/// Robust standard deviation IQR/1.349 with type-7 quartiles.
double robust_sd(std::vector<double> values);

/// Median (type-7 interpolation); companion to robust_sd for summaries.
double median(std::vector<double> values);

struct SelMetrics {
  int tp = 0;
  int fp = 0;
};

SelMetrics selection_metrics(std::span<const int> selected, std::span<const int> truth);

/// Mean squared prediction error.
double prediction_error(const Vec& predicted, const Vec& observed);

/// Per-column standardization fitted on training data and applied to both
/// training and held-out covariates.
struct ColumnScaling {
  Vec mean, sd;
};
ColumnScaling fit_scaling(const Mat& x);
void apply_scaling(Mat& x, const ColumnScaling& scaling);

}  // namespace nis
