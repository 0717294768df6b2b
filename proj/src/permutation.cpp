#include "nis/permutation.hpp"

#include "nis/joint_fit.hpp"
#include "nis/rng.hpp"

#include <algorithm>
#include <numeric>

namespace nis {
namespace {

ThresholdResult threshold_on(const Vec& series, const BasisDesign& bd, const Mat& x,
                             std::span<const int> candidates, const PermutationConfig& cfg) {
  if (candidates.empty()) throw NisError("permutation threshold needs a nonempty candidate set");
  if (cfg.rounds < 1) throw NisError("permutation rounds must be positive");
  const int n = bd.n();

  ThresholdResult result;
  result.pseudo_response = series;
  result.null_scores.reserve(static_cast<std::size_t>(cfg.rounds) * candidates.size());
  for (int b = 0; b < cfg.rounds; ++b) {
    std::vector<int> perm;
    if (cfg.fixed_permutations) {
      if (static_cast<int>(cfg.fixed_permutations->size()) <= b)
        throw NisError("fixed_permutations holds fewer entries than rounds");
      perm = (*cfg.fixed_permutations)[b];
      if (static_cast<int>(perm.size()) != n)
        throw NisError("fixed permutation length mismatch");
    } else {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(b)));
      perm = random_permutation(n, rng);
    }
    Vec permuted(n);
    for (int i = 0; i < n; ++i) permuted[i] = series[perm[i]];
    const auto scores = marginal_utilities(permuted, bd, x, candidates, cfg.screen);
    result.null_scores.insert(result.null_scores.end(), scores.begin(), scores.end());
  }
  std::sort(result.null_scores.begin(), result.null_scores.end(), std::greater<>());
  const int q = std::clamp(cfg.q, 1, static_cast<int>(result.null_scores.size()));
  result.tau = result.null_scores[q - 1];
  return result;
}

}  // namespace

ThresholdResult permutation_threshold(const Vec& y, const BasisDesign& bd, const Mat& x,
                                      std::span<const int> candidates,
                                      const PermutationConfig& cfg) {
  return threshold_on(y, bd, x, candidates, cfg);
}

ThresholdResult conditional_permutation_threshold(const Vec& y, const BasisDesign& bd,
                                                  const Mat& x,
                                                  std::span<const int> conditioning,
                                                  const PermutationConfig& cfg) {
  const int p = static_cast<int>(x.cols());
  if (conditioning.empty()) {
    std::vector<int> all(p);
    std::iota(all.begin(), all.end(), 0);
    return threshold_on(y, bd, x, all, cfg);
  }
  const JointFit jf = fit_joint(y, bd, x, conditioning, cfg.screen);
  const Vec ystar = y - jf.fitted;
  std::vector<int> rest;
  rest.reserve(p);
  for (int j = 0; j < p; ++j)
    if (!std::binary_search(jf.coef.members.begin(), jf.coef.members.end(), j))
      rest.push_back(j);
  if (rest.empty()) throw NisError("conditioning set covers every covariate");
  return threshold_on(ystar, bd, x, rest, cfg);
}

}  // namespace nis
