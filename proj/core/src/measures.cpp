#include "ebit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ebit {

namespace {

// No validation; callers clamp/check first.
double entropy_kernel(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

std::vector<double> clamped_spectrum(const Density& rho) {
  auto eigs = hermitian_eigenvalues(rho.mat);
  for (double& e : eigs) {
    if (e < kEigenvalueFloor) throw std::invalid_argument("not PSD");
    if (e < 0.0) e = 0.0;
  }
  return eigs;
}

double binary_entropy(double p) {
  std::vector<double> dist{p, 1.0 - p};
  return entropy_kernel(dist);
}

}  // namespace

double shannon_entropy(const std::vector<double>& probs) {
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw std::invalid_argument("not a distribution");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw std::invalid_argument("not a distribution");
  return entropy_kernel(probs);
}

double von_neumann_entropy(const Density& rho) {
  return entropy_kernel(clamped_spectrum(rho));
}

double entropy_of_entanglement(const PureState& psi) {
  return entropy_kernel(schmidt_probs(psi));
}

double source_entanglement(const PureEnsemble& ens) {
  double e = 0.0;
  for (const auto& entry : ens.entries)
    e += entry.prob * entropy_of_entanglement(entry.state);
  return e;
}

double concavity_upper_bound(const PureEnsemble& ens) {
  const Density rho = average_state(ens);
  const double sa =
      von_neumann_entropy(partial_trace(rho, ens.dimA, ens.dimB, Subsystem::A));
  const double sb =
      von_neumann_entropy(partial_trace(rho, ens.dimA, ens.dimB, Subsystem::B));
  return std::min(sa, sb);
}

HashingBound hashing_lower_bound(const Density& rho, int dimA, int dimB) {
  if (rho.dim != dimA * dimB) throw std::invalid_argument("shape error");
  const double sab = von_neumann_entropy(rho);
  const double sa =
      von_neumann_entropy(partial_trace(rho, dimA, dimB, Subsystem::A));
  const double sb =
      von_neumann_entropy(partial_trace(rho, dimA, dimB, Subsystem::B));
  HashingBound h;
  h.a_to_b = sa - sab;
  h.b_to_a = sb - sab;
  h.max = std::max(h.a_to_b, h.b_to_a);
  h.floored_max = std::max(0.0, h.max);
  return h;
}

double gap_upper_bound(const PureEnsemble& ens) {
  const Density rho = average_state(ens);
  const double sab = von_neumann_entropy(rho);
  const double sa =
      von_neumann_entropy(partial_trace(rho, ens.dimA, ens.dimB, Subsystem::A));
  const double sb =
      von_neumann_entropy(partial_trace(rho, ens.dimA, ens.dimB, Subsystem::B));
  return sab - std::abs(sa - sb);
}

RateBound theorem_rate_bound(const PureEnsemble& ens) {
  std::vector<double> probs;
  for (const auto& e : ens.entries) probs.push_back(e.prob);
  if (entropy_kernel(probs) <= 1e-12) return std::nullopt;

  const Density rho = average_state(ens);
  const double sab = von_neumann_entropy(rho);
  // S_AB = 0 forces all ensemble states to coincide up to phase, so no
  // entanglement is hidden and the rate is 0 (the formula itself is 0/0).
  if (sab <= kNormTol) return 0.0;
  const double sa =
      von_neumann_entropy(partial_trace(rho, ens.dimA, ens.dimB, Subsystem::A));
  const double sb =
      von_neumann_entropy(partial_trace(rho, ens.dimA, ens.dimB, Subsystem::B));
  double r = 1.0 - std::abs(sa - sb) / sab;
  if (r < 0.0 && r > -kNormTol) r = 0.0;
  if (r > 1.0) r = 1.0;
  return r;
}

double log_negativity(const Density& rho, int dimA, int dimB) {
  if (rho.dim != dimA * dimB) throw std::invalid_argument("shape error");
  const Matrix pt = partial_transpose(rho.mat, dimA, dimB);
  double trace_norm = 0.0;
  for (double e : hermitian_eigenvalues(pt)) trace_norm += std::abs(e);
  return std::max(0.0, std::log2(trace_norm));
}

double eof_two_qubit(const Density& rho) {
  if (rho.dim != 4) throw std::invalid_argument("two-qubit only");
  // Spin-flipped state rho~ = (sy x sy) rho* (sy x sy)
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix tilde = yy * rho.mat.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> solver(rho.mat * tilde, false);
  std::vector<double> lambdas;
  for (Eigen::Index i = 0; i < 4; ++i)
    lambdas.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i).real())));
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  const double concurrence =
      std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
  const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - concurrence * concurrence)));
  return binary_entropy(x);
}

RateInterval certified_rate_interval(const PureEnsemble& ens) {
  RateInterval out;
  if (ens.dimA != 2 || ens.dimB != 2) {
    out.status = RateInterval::Status::kUnavailable;
    return out;
  }
  std::vector<double> probs;
  for (const auto& e : ens.entries) probs.push_back(e.prob);
  const double h = entropy_kernel(probs);
  if (h <= 1e-12) {
    out.status = RateInterval::Status::kUndefined;
    return out;
  }

  const Density rho = average_state(ens);
  const double e_source = source_entanglement(ens);
  // E^inf <= E_F exactly computable here, so (E_source - E_F)/H is a
  // certified lower bound on the rate.
  const double low = std::max(0.0, e_source - eof_two_qubit(rho)) / h;
  const HashingBound hash = hashing_lower_bound(rho, 2, 2);
  double high = std::max(low, (e_source - hash.floored_max) / h);
  const RateBound bound = theorem_rate_bound(ens);
  if (bound) high = std::min(high, *bound);
  out.status = RateInterval::Status::kValue;
  out.low = low;
  out.high = high;
  return out;
}

std::vector<std::string> check_report(const EnsembleReport& r) {
  std::vector<std::string> violations;
  const double tol = 1e-9;
  if (!(r.s_ab >= -tol && r.s_ab <= r.h_labels + tol))
    violations.push_back("mixing_sandwich");
  if (!(r.e_source <= r.concavity_upper + tol))
    violations.push_back("concavity_bound");
  const double mn = std::min(r.s_a, r.s_b);
  const double mx = std::max(r.s_a, r.s_b);
  if (std::abs((mn - (mx - r.s_ab)) - (r.s_ab - std::abs(r.s_a - r.s_b))) >
      1e-12)
    violations.push_back("chain_identity");
  if (r.rate_bound && !(*r.rate_bound >= 0.0 && *r.rate_bound <= 1.0))
    violations.push_back("rate_bound_range");
  if (!(r.gap_upper >= -tol)) violations.push_back("araki_lieb");
  if (r.certified && r.certified->status == RateInterval::Status::kValue &&
      !(r.certified->low <= r.certified->high + tol))
    violations.push_back("certified_interval_order");
  return violations;
}

EnsembleReport analyze(const PureEnsemble& ens, const Diagnostics& diag) {
  EnsembleReport r;
  const Density rho = average_state(ens);
  r.s_ab = von_neumann_entropy(rho);
  r.s_a = von_neumann_entropy(
      partial_trace(rho, ens.dimA, ens.dimB, Subsystem::A));
  r.s_b = von_neumann_entropy(
      partial_trace(rho, ens.dimA, ens.dimB, Subsystem::B));
  std::vector<double> probs;
  for (const auto& e : ens.entries) probs.push_back(e.prob);
  r.h_labels = shannon_entropy(probs);
  r.e_source = source_entanglement(ens);
  r.concavity_upper = std::min(r.s_a, r.s_b);
  r.hashing = hashing_lower_bound(rho, ens.dimA, ens.dimB);
  r.gap_upper = r.s_ab - std::abs(r.s_a - r.s_b);
  r.rate_bound = theorem_rate_bound(ens);

  if (diag.log_negativity)
    r.log_neg = log_negativity(rho, ens.dimA, ens.dimB);
  if (diag.eof && ens.dimA == 2 && ens.dimB == 2) r.eof = eof_two_qubit(rho);
  if (diag.eof) r.certified = certified_rate_interval(ens);

  const auto violations = check_report(r);
  if (!violations.empty())
    throw std::logic_error("report invariant violated: " + violations.front());
  return r;
}

}  // namespace ebit
