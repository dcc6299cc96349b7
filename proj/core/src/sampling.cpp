#include "ebit/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace ebit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  // Two mixing rounds decorrelate (seed, stream) pairs before the stream
  // state is fixed.
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  state_ = splitmix64(s);
}

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

int Rng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next_u64() % span);
}

PureState haar_random_state(int dimA, int dimB, Rng& rng) {
  CVector amps(static_cast<Eigen::Index>(dimA) * dimB);
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    amps(i) = Complex{rng.normal(), rng.normal()};
  amps /= amps.norm();
  return PureState{dimA, dimB, std::move(amps)};
}

PureEnsemble random_ensemble(int dimA, int dimB, int numStates, Rng& rng) {
  std::vector<double> weights(numStates);
  double total = 0.0;
  for (double& w : weights) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    w = -std::log(u);  // Exp(1); normalizing gives a flat Dirichlet
    total += w;
  }
  std::vector<PureEnsemble::Entry> entries;
  entries.reserve(numStates);
  for (int i = 0; i < numStates; ++i)
    entries.push_back(
        PureEnsemble::Entry{weights[i] / total, haar_random_state(dimA, dimB, rng)});
  return make_ensemble(dimA, dimB, std::move(entries));
}

std::vector<TrialRecord> sweep(const SampleConfig& cfg, const Diagnostics& diag,
                               int threads) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<TrialRecord> records(cfg.trials);

  auto run_trial = [&](int t) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(t));
    TrialRecord rec;
    rec.trial = t;
    rec.ensemble = random_ensemble(cfg.dimA, cfg.dimB, cfg.numStates, rng);

    // Assemble the report without throwing so violations stay data.
    EnsembleReport r;
    const Density rho = average_state(rec.ensemble);
    r.s_ab = von_neumann_entropy(rho);
    r.s_a = von_neumann_entropy(
        partial_trace(rho, cfg.dimA, cfg.dimB, Subsystem::A));
    r.s_b = von_neumann_entropy(
        partial_trace(rho, cfg.dimA, cfg.dimB, Subsystem::B));
    std::vector<double> probs;
    for (const auto& e : rec.ensemble.entries) probs.push_back(e.prob);
    r.h_labels = shannon_entropy(probs);
    r.e_source = source_entanglement(rec.ensemble);
    r.concavity_upper = std::min(r.s_a, r.s_b);
    r.hashing = hashing_lower_bound(rho, cfg.dimA, cfg.dimB);
    r.gap_upper = r.s_ab - std::abs(r.s_a - r.s_b);
    r.rate_bound = theorem_rate_bound(rec.ensemble);
    if (diag.log_negativity)
      r.log_neg = log_negativity(rho, cfg.dimA, cfg.dimB);
    if (diag.eof && cfg.dimA == 2 && cfg.dimB == 2)
      r.eof = eof_two_qubit(rho);
    if (diag.eof) r.certified = certified_rate_interval(rec.ensemble);

    rec.violations = check_report(r);
    rec.report = std::move(r);
    records[t] = std::move(rec);
  };

  if (threads <= 1) {
    for (int t = 0; t < cfg.trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int t = w; t < cfg.trials; t += threads) run_trial(t);
      });
    for (auto& th : pool) th.join();
  }
  return records;
}

AdditivityReport additivity_check(const PureEnsemble& ens, int n) {
  if (n < 2 || n > 3) throw std::invalid_argument("multicopy too large");
  AdditivityReport rep;
  rep.copies = n;

  // (a) pairwise products against the sum of single-copy entropies
  for (const auto& ei : ens.entries) {
    for (const auto& ej : ens.entries) {
      PureEnsemble pair =
          make_ensemble(ens.dimA, ens.dimB,
                        {PureEnsemble::Entry{0.5, ei.state},
                         PureEnsemble::Entry{0.5, ej.state}});
      // Product of the two-entry ensemble restricted to the (i, j) outcome
      auto outcomes = multicopy(pair, 2);
      for (const auto& o : outcomes) {
        if (o.indices != std::vector<int>{0, 1}) continue;
        const double direct = entropy_of_entanglement(o.state);
        const double sum = entropy_of_entanglement(ei.state) +
                           entropy_of_entanglement(ej.state);
        rep.pair_error = std::max(rep.pair_error, std::abs(direct - sum));
      }
    }
  }

  // (b) entropy of the regrouped tensor power
  const Density rho = average_state(ens);
  const Matrix rho_n = regrouped_tensor_power(rho.mat, ens.dimA, ens.dimB, n);
  const double s_n =
      von_neumann_entropy(Density{static_cast<int>(rho_n.rows()), rho_n});
  rep.entropy_error = std::abs(s_n - n * von_neumann_entropy(rho));

  // (c) source entanglement of the expanded ensemble
  const PureEnsemble multi = multicopy_ensemble(ens, n);
  rep.source_error =
      std::abs(source_entanglement(multi) - n * source_entanglement(ens));

  rep.passed = rep.pair_error <= kAdditivityTol &&
               rep.entropy_error <= kAdditivityTol &&
               rep.source_error <= kAdditivityTol;
  return rep;
}

}  // namespace ebit
