#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ebit/ensemble.hpp"
#include "ebit/linalg.hpp"

namespace ebit {

// All entropies base 2: units are bits / ebits throughout.

// -sum p log2 p with 0 log 0 = 0.  Throws
// std::invalid_argument("not a distribution") on negative entries or a sum
// off by more than kNormTol.
double shannon_entropy(const std::vector<double>& probs);

// Entropy of the clamped spectrum.  Eigenvalues in [kEigenvalueFloor, 0)
// are clamped to 0; anything lower throws
// std::invalid_argument("not PSD").
double von_neumann_entropy(const Density& rho);

// Entropy of entanglement of a pure bipartite state: Shannon entropy of the
// Schmidt spectrum (equals the entropy of either marginal).
double entropy_of_entanglement(const PureState& psi);

// E(S^AB) = sum_i p_i E(psi_i): the per-copy entanglement of the source,
// in the additive pure-state form.
double source_entanglement(const PureEnsemble& ens);

// min(S(rho^A), S(rho^B)) for rho the average state.  Upper-bounds
// source_entanglement.
double concavity_upper_bound(const PureEnsemble& ens);

// One-way hashing lower bounds on distillable entanglement.  Raw values may
// be negative; floored_max is the max clamped at 0 (distillable
// entanglement is nonnegative) and is what certified intervals consume.
struct HashingBound {
  double a_to_b = 0.0;  // S(rho^A) - S(rho^AB)
  double b_to_a = 0.0;  // S(rho^B) - S(rho^AB)
  double max = 0.0;     // raw maximum of the two
  double floored_max = 0.0;
};

HashingBound hashing_lower_bound(const Density& rho, int dimA, int dimB);

// S(rho^AB) - |S(rho^A) - S(rho^B)|: the per-copy cap on the unlockable
// entanglement increment.
double gap_upper_bound(const PureEnsemble& ens);

// Rate quantities carry an in-band "undefined" flag for the degenerate
// H({p_i}) = 0 case (the rate definition divides by H).
using RateBound = std::optional<double>;

// 1 - |S_A - S_B| / S_AB, in [0, 1].  Returns 0 when S_AB <= kNormTol
// (all ensemble states coincide up to phase, so nothing can be unlocked)
// and nullopt ("undefined") when H <= 1e-12.
RateBound theorem_rate_bound(const PureEnsemble& ens);

// log2 of the trace norm of the partial transpose, floored at 0.
double log_negativity(const Density& rho, int dimA, int dimB);

// Exact two-qubit entanglement of formation via the concurrence
// construction.  Throws std::invalid_argument("two-qubit only") unless
// rho.dim == 4 (interpreted as (2,2)).
double eof_two_qubit(const Density& rho);

// Certified bracket on the unlocking rate.  Only available for
// dimA == dimB == 2 averages (the only case with an exact entanglement of
// formation); undefined when H = 0.
struct RateInterval {
  enum class Status { kValue, kUnavailable, kUndefined };
  Status status = Status::kUnavailable;
  double low = 0.0;
  double high = 0.0;
};

RateInterval certified_rate_interval(const PureEnsemble& ens);

struct Diagnostics {
  bool log_negativity = false;
  bool eof = false;  // implies certified_rate_interval on (2,2)
};

// Everything the library knows about one ensemble.
struct EnsembleReport {
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double h_labels = 0.0;
  double e_source = 0.0;
  double concavity_upper = 0.0;
  HashingBound hashing;
  double gap_upper = 0.0;
  RateBound rate_bound;
  std::optional<double> log_neg;
  std::optional<double> eof;
  std::optional<RateInterval> certified;
};

// Names of the inequality checks applied to every report.
// mixing_sandwich: 0 <= S_AB <= H + tol (pure decomposition corollary)
// concavity_bound: E_source <= min(S_A, S_B) + tol
// chain_identity:  min - (max - S_AB) == S_AB - |S_A - S_B| to 1e-12
// rate_bound_range: rate in [0, 1] whenever defined
// araki_lieb: gap_upper >= -tol
std::vector<std::string> check_report(const EnsembleReport& report);

// Fully populated report; throws std::logic_error naming the first violated
// report invariant (use check_report for the non-throwing path).
EnsembleReport analyze(const PureEnsemble& ens,
                       const Diagnostics& diag = Diagnostics{});

}  // namespace ebit
