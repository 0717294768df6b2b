#pragma once

#include "nis/group_scad.hpp"
#include "nis/marginal_screen.hpp"
#include "nis/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nis {

enum class InisVariant { conditional, greedy };

enum class Termination {
  fixed_point,      // no recruits, or the selected set revisited an earlier one
  size_cap,         // selected set reached the size cap zeta
  max_iter,         // iteration budget exhausted
  empty_selection,  // the penalized fit dropped every group
};

std::string to_string(InisVariant v);
std::string to_string(Termination t);

struct InisConfig {
  InisVariant variant = InisVariant::conditional;
  int init_k = 5;                  // conditional: |M0| taken from the unconditional ranking
  std::vector<int> conditioning;   // explicit M0 override for the conditional variant
  int p0 = 1;                      // greedy: recruits per iteration
  int rounds = 1;                  // permutation rounds
  int q = 1;                       // q-th largest pooled null utility
  int zeta = 0;                    // size cap; 0 = floor(n / (L * ln n))
  int max_iter = 20;
  std::uint64_t seed = 0;
  ScreenOptions screen;
  ScadConfig scad;
};

struct InisIteration {
  int iter = 0;
  double tau = 0;                // permutation threshold (NaN for greedy)
  int num_recruits = 0;          // above-threshold (or top-p0) covariates
  bool truncated = false;        // candidate union clipped to the size cap
  std::vector<int> candidates;   // A_{l+1}: conditioning-set union recruits
  std::vector<int> selected;     // M_{l+1}: SCAD survivors
  double lambda = 0;
  double bic = 0;
};

struct InisResult {
  std::vector<int> selected;  // final selected set, sorted
  ScadModel model;            // penalized fit that produced the final set
  std::vector<InisIteration> trace;
  Termination termination = Termination::fixed_point;
  int zeta = 0;               // cap actually applied
  int iterations = 0;
};

/// Runs iterated screening-and-selection. The conditional variant screens
/// partial residuals against a conditional random-permutation threshold; the
/// greedy variant recruits the top p0 covariates of the partial-residual
/// screen each round. Deterministic for a fixed (config, data) pair.
InisResult run_inis(const Dataset& data, const SplineBasis& basis, const InisConfig& cfg);

}  // namespace nis
