#pragma once

#include <string>
#include <vector>

#include "ebit/linalg.hpp"

namespace ebit {

// Probability-weighted list of pure states on common dimensions: the i.i.d.
// source S^AB.  Immutable after validation.
struct PureEnsemble {
  struct Entry {
    double prob = 0.0;
    PureState state;
  };

  int dimA = 0;
  int dimB = 0;
  std::vector<Entry> entries;
  // Set when zero-probability entries were dropped during validation.
  bool dropped_zero_prob = false;

  int dim() const { return dimA * dimB; }
  int size() const { return static_cast<int>(entries.size()); }
};

// Validates probabilities (nonnegative, summing to 1 within kNormTol),
// state norms and dimension agreement.  Zero-probability entries are
// dropped with the dropped_zero_prob flag set.  Throws std::invalid_argument
// with "probabilities not normalized", "state not normalized" or
// "shape error".
PureEnsemble make_ensemble(int dimA, int dimB,
                           std::vector<PureEnsemble::Entry> entries);

// rho = sum_i p_i |psi_i><psi_i|
Density average_state(const PureEnsemble& ens);

// One N-fold emission of the source, regrouped so all A factors precede all
// B factors across the A:B cut.
struct MulticopyOutcome {
  std::vector<int> indices;  // (i_1, ..., i_N) into ens.entries
  double prob = 0.0;
  PureState state;  // on (dimA^N, dimB^N)
};

inline constexpr int kMulticopyOutcomeCap = 4096;

// All k^N outcomes of N consecutive uses.  Throws
// std::invalid_argument("multicopy too large") when k^N exceeds the outcome
// cap or the tensor dimension exceeds the element cap.
std::vector<MulticopyOutcome> multicopy(const PureEnsemble& ens, int n);

// The multicopy outcomes repackaged as an ensemble on (dimA^N, dimB^N).
PureEnsemble multicopy_ensemble(const PureEnsemble& ens, int n);

// Permutation taking the copy-major index (c_1,...,c_N), c_k = a_k*dimB+b_k,
// to the regrouped index (a_1..a_N)*dimB^N + (b_1..b_N).  Exposed so the
// N-copy average state can be compared against tensor powers of rho.
std::vector<int> regroup_permutation(int dimA, int dimB, int n);

// rho^(x)N with indices regrouped across the A^N : B^N cut.
Matrix regrouped_tensor_power(const Matrix& rho, int dimA, int dimB, int n);

// JSON serialization.  Format: {"dims": [dimA, dimB], "states": [{"p": ...,
// "amps": [[re, im], ...]}, ...]}.  parse_ensemble rejects unknown top-level
// keys and validates the result.
std::string serialize_ensemble(const PureEnsemble& ens);
PureEnsemble parse_ensemble(const std::string& json_text);

}  // namespace ebit
