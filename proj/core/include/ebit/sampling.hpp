#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ebit/ensemble.hpp"
#include "ebit/measures.hpp"

namespace ebit {

// Counter-seeded splitmix64 stream.  Substreams are derived from
// (seed, stream index) by hashing, never by jumping, so per-trial streams
// are independent of execution order and safe to hand to parallel workers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 bits of precision.
  double uniform();
  // Standard normal via Box-Muller (self-contained so the byte stream does
  // not depend on the standard library's distribution internals).
  double normal();
  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct SampleConfig {
  int dimA = 2;
  int dimB = 2;
  int numStates = 2;
  int trials = 1;
  std::uint64_t seed = 0;
};

// Amplitudes drawn as i.i.d. standard complex Gaussians, then normalized;
// the resulting distribution is Haar (unitarily invariant).
PureState haar_random_state(int dimA, int dimB, Rng& rng);

// numStates Haar states, probabilities flat-Dirichlet on the simplex
// (normalized unit exponentials).
PureEnsemble random_ensemble(int dimA, int dimB, int numStates, Rng& rng);

struct TrialRecord {
  int trial = 0;
  PureEnsemble ensemble;
  EnsembleReport report;
  std::vector<std::string> violations;
};

// One analyzed random ensemble per trial; violations are data, not
// exceptions.  Deterministic in cfg.seed; trial t always uses substream t
// so parallel and sequential execution agree.
std::vector<TrialRecord> sweep(const SampleConfig& cfg,
                               const Diagnostics& diag = Diagnostics{},
                               int threads = 1);

struct AdditivityReport {
  int copies = 0;
  // (a) pairwise tensor products: max |E(psi_i x psi_j) - E(psi_i) - E(psi_j)|
  double pair_error = 0.0;
  // (b) |S(regrouped rho^xN) - N S(rho)|
  double entropy_error = 0.0;
  // (c) |E_source(multicopy ensemble) - N E_source|
  double source_error = 0.0;
  bool passed = false;
};

inline constexpr double kAdditivityTol = 1e-8;

// Verifies the additive closed forms against explicit N-copy expansion.
// N in {2, 3}; throws "multicopy too large" when caps are exceeded.
AdditivityReport additivity_check(const PureEnsemble& ens, int n);

}  // namespace ebit
