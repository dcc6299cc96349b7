#include "ebit/ensemble.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include <nlohmann/json.hpp>

namespace ebit {

PureEnsemble make_ensemble(int dimA, int dimB,
                           std::vector<PureEnsemble::Entry> entries) {
  if (dimA < 1 || dimB < 1 || entries.empty())
    throw std::invalid_argument("shape error");
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.prob < 0.0)
      throw std::invalid_argument("probabilities not normalized");
    if (e.state.dimA != dimA || e.state.dimB != dimB)
      throw std::invalid_argument("shape error");
    if (std::abs(e.state.amps.norm() - 1.0) > kNormTol)
      throw std::invalid_argument("state not normalized");
    total += e.prob;
  }
  if (std::abs(total - 1.0) > kNormTol)
    throw std::invalid_argument("probabilities not normalized");

  PureEnsemble ens{dimA, dimB, {}, false};
  for (auto& e : entries) {
    if (e.prob == 0.0) {
      ens.dropped_zero_prob = true;
      continue;
    }
    ens.entries.push_back(std::move(e));
  }
  if (ens.entries.empty()) throw std::invalid_argument("shape error");
  return ens;
}

Density average_state(const PureEnsemble& ens) {
  Matrix rho = Matrix::Zero(ens.dim(), ens.dim());
  for (const auto& e : ens.entries) rho += e.prob * e.state.projector();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return Density{ens.dim(), std::move(rho)};
}

namespace {

std::int64_t ipow(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_multicopy_caps(const PureEnsemble& ens, int n) {
  if (n < 1) throw std::invalid_argument("multicopy too large");
  const int k = ens.size();
  std::int64_t outcomes = 1;
  for (int i = 0; i < n; ++i) {
    outcomes *= k;
    if (outcomes > kMulticopyOutcomeCap)
      throw std::invalid_argument("multicopy too large");
  }
  std::int64_t dim = ipow(ens.dim(), n);
  if (dim > static_cast<std::int64_t>(kElementCap))
    throw std::invalid_argument("multicopy too large");
}

}  // namespace

std::vector<int> regroup_permutation(int dimA, int dimB, int n) {
  const int d = dimA * dimB;
  const std::int64_t total = ipow(d, n);
  const std::int64_t blockB = ipow(dimB, n);
  std::vector<int> perm(total);
  for (std::int64_t g = 0; g < total; ++g) {
    // copy-major digits, first copy most significant
    std::int64_t rest = g;
    std::int64_t aMulti = 0, bMulti = 0;
    std::int64_t div = ipow(d, n - 1);
    for (int c = 0; c < n; ++c) {
      const int digit = static_cast<int>(rest / div);
      rest %= div;
      div /= d;
      aMulti = aMulti * dimA + digit / dimB;
      bMulti = bMulti * dimB + digit % dimB;
    }
    perm[g] = static_cast<int>(aMulti * blockB + bMulti);
  }
  return perm;
}

Matrix regrouped_tensor_power(const Matrix& rho, int dimA, int dimB, int n) {
  if (rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(dimA) * dimB)
    throw std::invalid_argument("shape error");
  Matrix power = rho;
  for (int i = 1; i < n; ++i) power = tensor_product(power, rho);
  const auto perm = regroup_permutation(dimA, dimB, n);
  Matrix out(power.rows(), power.cols());
  for (Eigen::Index i = 0; i < power.rows(); ++i)
    for (Eigen::Index j = 0; j < power.cols(); ++j)
      out(perm[i], perm[j]) = power(i, j);
  return out;
}

std::vector<MulticopyOutcome> multicopy(const PureEnsemble& ens, int n) {
  check_multicopy_caps(ens, n);
  const int k = ens.size();
  const std::int64_t total = ipow(k, n);
  const int dimAn = static_cast<int>(ipow(ens.dimA, n));
  const int dimBn = static_cast<int>(ipow(ens.dimB, n));
  const auto perm = regroup_permutation(ens.dimA, ens.dimB, n);
  const std::int64_t stateDim = static_cast<std::int64_t>(dimAn) * dimBn;

  std::vector<MulticopyOutcome> outcomes;
  outcomes.reserve(total);
  for (std::int64_t t = 0; t < total; ++t) {
    std::vector<int> indices(n);
    std::int64_t rest = t;
    for (int c = n - 1; c >= 0; --c) {
      indices[c] = static_cast<int>(rest % k);
      rest /= k;
    }
    double prob = 1.0;
    for (int idx : indices) prob *= ens.entries[idx].prob;

    CVector amps = CVector::Zero(stateDim);
    const int d = ens.dim();
    for (std::int64_t g = 0; g < stateDim; ++g) {
      Complex amp{1.0, 0.0};
      std::int64_t div = ipow(d, n - 1);
      std::int64_t r = g;
      for (int c = 0; c < n; ++c) {
        const int digit = static_cast<int>(r / div);
        r %= div;
        div /= d;
        amp *= ens.entries[indices[c]].state.amps(digit);
      }
      amps(perm[g]) = amp;
    }
    outcomes.push_back(
        MulticopyOutcome{std::move(indices), prob,
                         PureState{dimAn, dimBn, std::move(amps)}});
  }
  return outcomes;
}

PureEnsemble multicopy_ensemble(const PureEnsemble& ens, int n) {
  auto outcomes = multicopy(ens, n);
  std::vector<PureEnsemble::Entry> entries;
  entries.reserve(outcomes.size());
  int dimAn = outcomes.front().state.dimA;
  int dimBn = outcomes.front().state.dimB;
  for (auto& o : outcomes)
    entries.push_back(PureEnsemble::Entry{o.prob, std::move(o.state)});
  return make_ensemble(dimAn, dimBn, std::move(entries));
}

std::string serialize_ensemble(const PureEnsemble& ens) {
  nlohmann::json doc;
  doc["dims"] = {ens.dimA, ens.dimB};
  doc["states"] = nlohmann::json::array();
  for (const auto& e : ens.entries) {
    nlohmann::json st;
    st["p"] = e.prob;
    auto amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < e.state.amps.size(); ++i)
      amps.push_back({e.state.amps(i).real(), e.state.amps(i).imag()});
    st["amps"] = std::move(amps);
    doc["states"].push_back(std::move(st));
  }
  return doc.dump(2);
}

PureEnsemble parse_ensemble(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("shape error");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "dims" && key != "states")
      throw std::invalid_argument("unknown key: " + key);
  }
  if (!doc.contains("dims") || !doc["dims"].is_array() ||
      doc["dims"].size() != 2)
    throw std::invalid_argument("shape error");
  const int dimA = doc["dims"][0].get<int>();
  const int dimB = doc["dims"][1].get<int>();
  if (!doc.contains("states") || !doc["states"].is_array())
    throw std::invalid_argument("shape error");

  std::vector<PureEnsemble::Entry> entries;
  for (const auto& st : doc["states"]) {
    if (!st.is_object() || !st.contains("p") || !st.contains("amps"))
      throw std::invalid_argument("shape error");
    const double p = st["p"].get<double>();
    const auto& raw = st["amps"];
    if (!raw.is_array() ||
        raw.size() != static_cast<std::size_t>(dimA) * dimB)
      throw std::invalid_argument("shape error");
    CVector amps(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!raw[i].is_array() || raw[i].size() != 2)
        throw std::invalid_argument("shape error");
      amps(static_cast<Eigen::Index>(i)) =
          Complex{raw[i][0].get<double>(), raw[i][1].get<double>()};
    }
    // Norm is validated by make_ensemble; PureState is assembled raw here so
    // the validator can report "state not normalized" rather than a generic
    // construction failure.
    entries.push_back(PureEnsemble::Entry{p, PureState{dimA, dimB, amps}});
  }
  return make_ensemble(dimA, dimB, std::move(entries));
}

}  // namespace ebit
