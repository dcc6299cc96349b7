#include <doctest.h>

#include "ebit/ensemble.hpp"
#include "ebit/sampling.hpp"
#include "test_helpers.hpp"

using namespace ebit;
using namespace ebit::testing;

TEST_CASE("validation accepts a singleton") {
  const auto ens = make_ensemble(
      2, 2, {PureEnsemble::Entry{1.0, basis_state(2, 2, 0, 0)}});
  CHECK(ens.size() == 1);
  CHECK_FALSE(ens.dropped_zero_prob);
}

TEST_CASE("validation rejects bad probabilities") {
  CHECK_THROWS_WITH(
      (void)make_ensemble(2, 2,
                          {PureEnsemble::Entry{0.6, basis_state(2, 2, 0, 0)},
                           PureEnsemble::Entry{0.6, basis_state(2, 2, 1, 1)}}),
      "probabilities not normalized");
  CHECK_THROWS_WITH(
      (void)make_ensemble(2, 2,
                          {PureEnsemble::Entry{1.5, basis_state(2, 2, 0, 0)},
                           PureEnsemble::Entry{-0.5, basis_state(2, 2, 1, 1)}}),
      "probabilities not normalized");
}

TEST_CASE("validation rejects unnormalized states") {
  CVector half = CVector::Zero(4);
  half(0) = 0.5;
  CHECK_THROWS_WITH(
      (void)make_ensemble(2, 2, {PureEnsemble::Entry{1.0, PureState{2, 2, half}}}),
      "state not normalized");
}

TEST_CASE("validation drops zero-probability entries") {
  const auto ens = make_ensemble(
      2, 2, {PureEnsemble::Entry{1.0, basis_state(2, 2, 0, 0)},
             PureEnsemble::Entry{0.0, basis_state(2, 2, 1, 1)}});
  CHECK(ens.size() == 1);
  CHECK(ens.dropped_zero_prob);
}

TEST_CASE("average state of simple ensembles") {
  const Density bell = average_state(
      make_ensemble(2, 2, {PureEnsemble::Entry{1.0, bell_phi_plus()}}));
  CHECK((bell.mat - bell_phi_plus().projector()).cwiseAbs().maxCoeff() < 1e-12);

  // orthogonal products and the Bell mixture give the same average: the
  // cross terms of the Bell projectors cancel
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK((average_state(classical_ensemble()).mat - expected)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((average_state(bell_mixture()).mat - expected).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("average state satisfies density invariants") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const auto ens = random_ensemble(3, 2, 4, rng);
    CHECK_NOTHROW((void)make_density(average_state(ens).mat));
  }
}

TEST_CASE("multicopy base case") {
  const auto outcomes = multicopy(classical_ensemble(), 1);
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[0].prob == doctest::Approx(0.5));
  CHECK(outcomes[0].indices == std::vector<int>{0});
  CHECK((outcomes[0].state.amps - basis_state(2, 2, 0, 0).amps).norm() < 1e-12);
}

TEST_CASE("multicopy N=2 of the classical ensemble") {
  const auto outcomes = multicopy(classical_ensemble(), 2);
  REQUIRE(outcomes.size() == 4);
  double total = 0.0;
  for (const auto& o : outcomes) {
    CHECK(o.prob == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(o.state.dimA == 4);
    CHECK(o.state.dimB == 4);
    total += o.prob;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("multicopy average state equals the regrouped tensor power") {
  Rng rng(32);
  for (int rep = 0; rep < 5; ++rep) {
    const auto ens = random_ensemble(2, 2, 3, rng);
    const auto multi = multicopy_ensemble(ens, 2);
    const Matrix direct = average_state(multi).mat;

    // independent oracle: permute kron(rho, rho) by hand
    const Matrix rho = average_state(ens).mat;
    const Matrix kron = tensor_product(rho, rho);
    Matrix oracle = Matrix::Zero(16, 16);
    for (int a1 = 0; a1 < 2; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int b2 = 0; b2 < 2; ++b2)
            for (int a3 = 0; a3 < 2; ++a3)
              for (int b3 = 0; b3 < 2; ++b3)
                for (int a4 = 0; a4 < 2; ++a4)
                  for (int b4 = 0; b4 < 2; ++b4) {
                    const int row_old = ((a1 * 2 + b1) * 4) + (a2 * 2 + b2);
                    const int col_old = ((a3 * 2 + b3) * 4) + (a4 * 2 + b4);
                    const int row_new = ((a1 * 2 + a2) * 4) + (b1 * 2 + b2);
                    const int col_new = ((a3 * 2 + a4) * 4) + (b3 * 2 + b4);
                    oracle(row_new, col_new) = kron(row_old, col_old);
                  }
    CHECK((direct - oracle).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((regrouped_tensor_power(rho, 2, 2, 2) - oracle).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("multicopy outcome probabilities sum to one") {
  Rng rng(33);
  const auto ens = random_ensemble(2, 2, 4, rng);
  for (int n : {1, 2, 3}) {
    double total = 0.0;
    for (const auto& o : multicopy(ens, n)) total += o.prob;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("multicopy cap enforcement") {
  Rng rng(34);
  const auto ens = random_ensemble(2, 2, 5, rng);
  CHECK_THROWS_WITH((void)multicopy(ens, 7), "multicopy too large");
}

TEST_CASE("serialization round trip") {
  Rng rng(35);
  for (int rep = 0; rep < 10; ++rep) {
    const auto ens = random_ensemble(3, 2, 3, rng);
    const auto back = parse_ensemble(serialize_ensemble(ens));
    REQUIRE(back.size() == ens.size());
    CHECK(back.dimA == ens.dimA);
    CHECK(back.dimB == ens.dimB);
    for (int i = 0; i < ens.size(); ++i) {
      CHECK(std::abs(back.entries[i].prob - ens.entries[i].prob) < 1e-12);
      CHECK((back.entries[i].state.amps - ens.entries[i].state.amps).norm() <
            1e-12);
    }
  }
}

TEST_CASE("parser rejects unknown top-level keys") {
  const std::string text = R"({"dims": [2, 2], "states": [], "extra": 1})";
  CHECK_THROWS_AS((void)parse_ensemble(text), std::invalid_argument);
}

TEST_CASE("parser surfaces validation diagnostics") {
  const std::string bad_probs = R"({"dims": [1, 2], "states": [
    {"p": 0.6, "amps": [[1, 0], [0, 0]]},
    {"p": 0.6, "amps": [[0, 0], [1, 0]]}]})";
  CHECK_THROWS_WITH((void)parse_ensemble(bad_probs),
                    "probabilities not normalized");

  const std::string bad_norm = R"({"dims": [1, 2], "states": [
    {"p": 1.0, "amps": [[0.5, 0], [0, 0]]}]})";
  CHECK_THROWS_WITH((void)parse_ensemble(bad_norm), "state not normalized");
}
