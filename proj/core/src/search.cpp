#include "ebit/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ebit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kRestartBudget = 500;

struct Parameterization {
  int dimA, dimB, numStates;

  int dimension() const { return numStates - 1 + numStates * 2 * dimA * dimB; }

  PureEnsemble decode(const std::vector<double>& x) const {
    // softmax over (x_0..x_{k-2}, 0)
    std::vector<double> logits(x.begin(), x.begin() + (numStates - 1));
    logits.push_back(0.0);
    const double m = *std::max_element(logits.begin(), logits.end());
    double z = 0.0;
    for (double& l : logits) {
      l = std::exp(l - m);
      z += l;
    }
    std::vector<PureEnsemble::Entry> entries;
    const int d = dimA * dimB;
    int off = numStates - 1;
    for (int s = 0; s < numStates; ++s) {
      CVector amps(d);
      for (int i = 0; i < d; ++i)
        amps(i) = Complex{x[off + 2 * i], x[off + 2 * i + 1]};
      off += 2 * d;
      const double norm = amps.norm();
      if (norm < 1e-12)
        amps(0) = 1.0;
      else
        amps /= norm;
      entries.push_back(PureEnsemble::Entry{logits[s] / z,
                                            PureState{dimA, dimB, amps}});
    }
    return make_ensemble(dimA, dimB, std::move(entries));
  }
};

}  // namespace

double evaluate_objective(Objective obj, const PureEnsemble& ens) {
  switch (obj) {
    case Objective::kRateBound: {
      const RateBound r = theorem_rate_bound(ens);
      return r ? *r : kNegInf;
    }
    case Objective::kGapUpper:
      return gap_upper_bound(ens);
    case Objective::kCertifiedLow: {
      const RateInterval iv = certified_rate_interval(ens);
      return iv.status == RateInterval::Status::kValue ? iv.low : kNegInf;
    }
    case Objective::kNegativeRateBound: {
      const RateBound r = theorem_rate_bound(ens);
      return r ? -*r : kNegInf;
    }
  }
  return kNegInf;
}

SearchResult search(Objective obj, int dimA, int dimB, int numStates,
                    int budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  const Parameterization param{dimA, dimB, numStates};
  const int n = param.dimension();

  SearchResult result;
  result.objective = obj;
  result.seed = seed;
  result.bestObjective = kNegInf;

  std::vector<double> best_x;

  auto evaluate = [&](const std::vector<double>& x) -> double {
    double value;
    try {
      value = evaluate_objective(obj, param.decode(x));
    } catch (const std::exception&) {
      value = kNegInf;
    }
    ++result.evaluations;
    if (value > result.bestObjective) {
      result.bestObjective = value;
      best_x = x;
      result.trace.emplace_back(result.evaluations, value);
    }
    return value;
  };

  // Flat degenerate regions (S_AB near 0) strand single descents, so the
  // budget is split across restarts.
  const int restarts = (budget + kRestartBudget - 1) / kRestartBudget;
  for (int restart = 0; restart < restarts; ++restart) {
    const int remaining = budget - result.evaluations;
    if (remaining <= 0) break;
    const int local_budget = std::min(kRestartBudget, remaining);
    int local_used = 0;
    auto budget_left = [&] { return local_used < local_budget; };
    auto eval_counted = [&](const std::vector<double>& x) {
      ++local_used;
      return evaluate(x);
    };

    Rng rng(seed, static_cast<std::uint64_t>(restart));

    // Initial simplex: random base point plus unit steps.
    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    std::vector<double> base(n);
    for (double& v : base) v = rng.normal();
    simplex.push_back(base);
    for (int i = 0; i < n && static_cast<int>(simplex.size()) < local_budget;
         ++i) {
      auto pt = base;
      pt[i] += 0.5;
      simplex.push_back(pt);
    }
    for (const auto& pt : simplex) {
      if (!budget_left()) break;
      values.push_back(eval_counted(pt));
    }
    while (values.size() < simplex.size()) simplex.pop_back();
    if (simplex.size() < 2) continue;

    constexpr double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;
    while (budget_left()) {
      // sort descending by objective (maximization)
      std::vector<std::size_t> order(simplex.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
      std::vector<std::vector<double>> sx;
      std::vector<double> sv;
      for (std::size_t idx : order) {
        sx.push_back(std::move(simplex[idx]));
        sv.push_back(values[idx]);
      }
      simplex = std::move(sx);
      values = std::move(sv);

      const std::size_t worst = simplex.size() - 1;
      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < worst; ++i)
        for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j];
      for (double& c : centroid) c /= static_cast<double>(worst);

      auto along = [&](double t) {
        std::vector<double> pt(n);
        for (int j = 0; j < n; ++j)
          pt[j] = centroid[j] + t * (centroid[j] - simplex[worst][j]);
        return pt;
      };

      const auto reflected = along(alpha);
      const double fr = eval_counted(reflected);
      if (fr > values[0]) {
        if (!budget_left()) break;
        const auto expanded = along(gamma);
        const double fe = eval_counted(expanded);
        if (fe > fr) {
          simplex[worst] = expanded;
          values[worst] = fe;
        } else {
          simplex[worst] = reflected;
          values[worst] = fr;
        }
      } else if (fr > values[worst - 1]) {
        simplex[worst] = reflected;
        values[worst] = fr;
      } else {
        if (!budget_left()) break;
        const auto contracted = along(-beta);
        const double fc = eval_counted(contracted);
        if (fc > values[worst]) {
          simplex[worst] = contracted;
          values[worst] = fc;
        } else {
          // shrink toward the best vertex
          for (std::size_t i = 1; i < simplex.size() && budget_left(); ++i) {
            for (int j = 0; j < n; ++j)
              simplex[i][j] =
                  simplex[0][j] + delta * (simplex[i][j] - simplex[0][j]);
            values[i] = eval_counted(simplex[i]);
          }
        }
      }

      double spread = 0.0;
      for (std::size_t i = 1; i < values.size(); ++i)
        spread = std::max(spread, std::abs(values[i] - values[0]));
      if (spread < 1e-12 && std::isfinite(values[0])) break;
    }
  }

  if (best_x.empty())
    throw std::logic_error("search produced no evaluation");
  result.bestEnsemble = param.decode(best_x);
  return result;
}

}  // namespace ebit
