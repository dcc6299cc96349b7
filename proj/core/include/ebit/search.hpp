#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ebit/ensemble.hpp"
#include "ebit/sampling.hpp"

namespace ebit {

enum class Objective {
  kRateBound,          // maximize the theorem rate bound
  kGapUpper,           // maximize the unlockable-increment cap
  kCertifiedLow,       // maximize the certified lower rate ((2,2) only)
  kNegativeRateBound,  // minimize the rate bound (probes the zero family)
};

struct SearchResult {
  PureEnsemble bestEnsemble;
  double bestObjective = 0.0;
  Objective objective = Objective::kRateBound;
  int evaluations = 0;
  std::uint64_t seed = 0;
  // (evaluation index, best objective so far); nondecreasing in value.
  std::vector<std::pair<int, double>> trace;
};

// Objective value of one ensemble; "undefined" rates map to -infinity so
// the search never selects a degenerate point.
double evaluate_objective(Objective obj, const PureEnsemble& ens);

// Random-restart Nelder-Mead ascent over an unconstrained parameterization
// (softmax for probabilities, normalized real pairs for amplitudes).
// Deterministic given seed; budget counts objective evaluations across all
// restarts.
SearchResult search(Objective obj, int dimA, int dimB, int numStates,
                    int budget, std::uint64_t seed);

}  // namespace ebit
