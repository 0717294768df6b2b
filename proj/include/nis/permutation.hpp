#pragma once

#include "nis/marginal_screen.hpp"
#include "nis/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nis {

struct PermutationConfig {
  int rounds = 1;           // permutation rounds pooled together
  int q = 1;                // threshold = q-th largest pooled null utility
  std::uint64_t seed = 0;   // substream-derived per round
  ScreenOptions screen;

  // Test hook: when set, round b uses (*fixed_permutations)[b] instead of a
  // random draw; must hold at least `rounds` permutations of 0..n-1.
  const std::vector<std::vector<int>>* fixed_permutations = nullptr;
};

struct ThresholdResult {
  double tau = 0;                   // q-th largest pooled null utility
  Vec pseudo_response;              // the series that was permuted and screened
  std::vector<double> null_scores;  // pooled null utilities, sorted descending
};

/// Random-permutation threshold: screens `candidates` against permuted copies
/// of y and returns the q-th largest pooled null utility.
ThresholdResult permutation_threshold(const Vec& y, const BasisDesign& bd, const Mat& x,
                                      std::span<const int> candidates,
                                      const PermutationConfig& cfg);

/// Conditional variant: fits the joint model on `conditioning`, permutes the
/// partial residual Y* = Y - fitted, and screens the complement of
/// `conditioning`. An empty conditioning set delegates to the unconditional
/// threshold on the raw response over all covariates.
ThresholdResult conditional_permutation_threshold(const Vec& y, const BasisDesign& bd,
                                                  const Mat& x,
                                                  std::span<const int> conditioning,
                                                  const PermutationConfig& cfg);

}  // namespace nis
