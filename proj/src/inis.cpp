#include "nis/inis.hpp"

#include "nis/joint_fit.hpp"
#include "nis/permutation.hpp"
#include "nis/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace nis {

std::string to_string(InisVariant v) {
  return v == InisVariant::conditional ? "conditional" : "greedy";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::fixed_point: return "fixed_point";
    case Termination::size_cap: return "size_cap";
    case Termination::max_iter: return "max_iter";
    case Termination::empty_selection: return "empty_selection";
  }
  return "unknown";
}

namespace {

std::vector<int> complement_of(const std::vector<int>& members, int p) {
  std::vector<int> rest;
  rest.reserve(p - static_cast<int>(members.size()));
  for (int j = 0; j < p; ++j)
    if (!std::binary_search(members.begin(), members.end(), j)) rest.push_back(j);
  return rest;
}

// recruits ordered by score descending (ties by index) for cap truncation
std::vector<int> order_by_score(const std::vector<int>& items, const std::vector<double>& score) {
  std::vector<int> pos(items.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) { return score[a] > score[b]; });
  std::vector<int> out(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) out[i] = items[pos[i]];
  return out;
}

}  // namespace

InisResult run_inis(const Dataset& data, const SplineBasis& basis, const InisConfig& cfg) {
  const int n = data.n(), p = data.p(), L = basis.num_basis();
  const BasisDesign bd = make_basis_design(basis, data.w);

  InisResult result;
  result.zeta = cfg.zeta > 0
                    ? cfg.zeta
                    : static_cast<int>(static_cast<double>(n) / (L * std::log(n)));
  if (result.zeta < 1) result.zeta = 1;

  // Initial conditioning set M0.
  std::vector<int> current;
  if (cfg.variant == InisVariant::conditional) {
    if (!cfg.conditioning.empty()) {
      current = cfg.conditioning;
      std::sort(current.begin(), current.end());
      current.erase(std::unique(current.begin(), current.end()), current.end());
      for (const int j : current)
        if (j < 0 || j >= p)
          throw NisError("conditioning covariate " + std::to_string(j) + " out of range");
    } else if (cfg.init_k > 0) {
      std::vector<int> all(p);
      std::iota(all.begin(), all.end(), 0);
      const auto u = marginal_utilities(data.y, bd, data.x, all, cfg.screen);
      const auto ranking = ranking_by_utility(u);
      const int k = std::min(cfg.init_k, p);
      current.assign(ranking.begin(), ranking.begin() + k);
      std::sort(current.begin(), current.end());
    }
  }

  std::set<std::vector<int>> history;
  history.insert(current);

  bool have_model = false;
  ScadModel last_model;
  bool terminated = false;

  for (int iter = 0; iter < cfg.max_iter && !terminated; ++iter) {
    const std::vector<int> rest = complement_of(current, p);
    if (rest.empty()) {
      result.termination = Termination::size_cap;
      break;
    }

    InisIteration step;
    step.iter = iter;

    // Screening response and recruit set.
    std::vector<int> recruits;
    std::vector<double> recruit_scores;
    if (cfg.variant == InisVariant::conditional) {
      PermutationConfig pc;
      pc.rounds = cfg.rounds;
      pc.q = cfg.q;
      pc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(iter));
      pc.screen = cfg.screen;
      const ThresholdResult thr =
          conditional_permutation_threshold(data.y, bd, data.x, current, pc);
      step.tau = thr.tau;
      const auto scores = marginal_utilities(thr.pseudo_response, bd, data.x, rest, cfg.screen);
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (scores[i] > thr.tau) {
          recruits.push_back(rest[i]);
          recruit_scores.push_back(scores[i]);
        }
      }
    } else {
      step.tau = std::numeric_limits<double>::quiet_NaN();
      const JointFit jf = fit_joint(data.y, bd, data.x, current, cfg.screen);
      const Vec ystar = data.y - jf.fitted;
      const auto scores = marginal_utilities(ystar, bd, data.x, rest, cfg.screen);
      const auto order = ranking_by_utility(scores);
      const int take = std::min(cfg.p0, static_cast<int>(rest.size()));
      for (int i = 0; i < take; ++i) {
        recruits.push_back(rest[order[i]]);
        recruit_scores.push_back(scores[order[i]]);
      }
    }
    step.num_recruits = static_cast<int>(recruits.size());

    if (recruits.empty()) {
      result.termination = Termination::fixed_point;
      result.iterations = iter + 1;
      result.trace.push_back(step);
      terminated = true;
      break;
    }

    // Candidate union, clipped to the size cap (conditioning set always kept).
    std::vector<int> cand = current;
    if (static_cast<int>(current.size() + recruits.size()) > result.zeta) {
      step.truncated = true;
      const auto ordered = order_by_score(recruits, recruit_scores);
      const int room = std::max(0, result.zeta - static_cast<int>(current.size()));
      cand.insert(cand.end(), ordered.begin(), ordered.begin() + std::min<int>(room, ordered.size()));
    } else {
      cand.insert(cand.end(), recruits.begin(), recruits.end());
    }
    std::sort(cand.begin(), cand.end());
    step.candidates = cand;

    // Penalized selection on the original response.
    last_model = fit_group_scad(data.y, bd, data.x, cand, cfg.scad);
    have_model = true;
    const std::vector<int>& next = last_model.coef.members;
    step.selected = next;
    step.lambda = last_model.lambda;
    step.bic = last_model.bic;
    result.trace.push_back(step);
    result.iterations = iter + 1;

    if (next.empty()) {
      current = next;
      result.termination = Termination::empty_selection;
      terminated = true;
      break;
    }
    if (history.count(next)) {
      current = next;
      result.termination = Termination::fixed_point;
      terminated = true;
      break;
    }
    if (static_cast<int>(next.size()) >= result.zeta) {
      current = next;
      result.termination = Termination::size_cap;
      terminated = true;
      break;
    }
    history.insert(next);
    current = next;
  }
  if (!terminated && result.iterations == cfg.max_iter)
    result.termination = Termination::max_iter;

  result.selected = current;
  if (have_model && last_model.coef.members == current) {
    result.model = last_model;
  } else {
    // No penalized fit produced the final set (immediate termination):
    // fit once on it so the result always carries coefficients.
    result.model = fit_group_scad(data.y, bd, data.x, current, cfg.scad);
    result.selected = result.model.coef.members;
  }
  return result;
}

}  // namespace nis
