#include <doctest.h>

#include "ebit/linalg.hpp"
#include "ebit/sampling.hpp"
#include "test_helpers.hpp"

using namespace ebit;
using namespace ebit::testing;

namespace {

Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex{rng.normal(), rng.normal()};
  return m;
}

Matrix haar_unitary(int dim, Rng& rng) {
  // QR of a Ginibre matrix with phase fix
  Matrix g = random_matrix(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

TEST_CASE("tensor product identities") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK((tensor_product(i2, i2) - Matrix::Identity(4, 4)).norm() ==
        doctest::Approx(0.0));

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(0, 0) = 0.5;
  b(1, 1) = 0.5;
  const Matrix prod = tensor_product(a, b);
  CHECK(prod(0, 0).real() == doctest::Approx(0.5));
  CHECK(prod(1, 1).real() == doctest::Approx(0.5));
  CHECK(prod(2, 2).real() == doctest::Approx(0.0));
  CHECK(prod(3, 3).real() == doctest::Approx(0.0));
}

TEST_CASE("tensor product trace is multiplicative") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = random_matrix(2, 2, rng);
    const Matrix b = random_matrix(2, 2, rng);
    const Complex lhs = tensor_product(a, b).trace();
    const Complex rhs = a.trace() * b.trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("tensor product associates") {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix a = random_matrix(2, 3, rng);
    const Matrix b = random_matrix(2, 2, rng);
    const Matrix c = random_matrix(3, 2, rng);
    const Matrix lhs = tensor_product(tensor_product(a, b), c);
    const Matrix rhs = tensor_product(a, tensor_product(b, c));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("tensor product rejects oversized results") {
  const Matrix big = Matrix::Identity(2048, 2048);
  CHECK_THROWS_WITH(tensor_product(big, big), "dimension overflow");
}

TEST_CASE("partial trace of Bell state is maximally mixed") {
  const Matrix rho = bell_phi_plus().projector();
  const Matrix redA = partial_trace(rho, 2, 2, Subsystem::A);
  const Matrix redB = partial_trace(rho, 2, 2, Subsystem::B);
  CHECK((redA - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((redB - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace factorizes product states") {
  Rng rng(21);
  const PureState a = haar_random_state(3, 1, rng);
  const PureState b = haar_random_state(2, 1, rng);
  const Matrix rho = tensor_product(a.projector(), b.projector());
  const Matrix redA = partial_trace(rho, 3, 2, Subsystem::A);
  CHECK((redA - a.projector()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace preserves trace") {
  Rng rng(22);
  for (int rep = 0; rep < 10; ++rep) {
    const PureState psi = haar_random_state(3, 4, rng);
    const Matrix rho = psi.projector();
    CHECK(std::abs(partial_trace(rho, 3, 4, Subsystem::A).trace() -
                   Complex{1.0, 0.0}) < 1e-9);
    CHECK(std::abs(partial_trace(rho, 3, 4, Subsystem::B).trace() -
                   Complex{1.0, 0.0}) < 1e-9);
  }
}

TEST_CASE("partial trace shape mismatch") {
  const Matrix rho = Matrix::Identity(6, 6) / 6.0;
  CHECK_THROWS_WITH(partial_trace(rho, 2, 2, Subsystem::A), "shape error");
}

TEST_CASE("reduced spectra match Schmidt probabilities") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const PureState psi = haar_random_state(3, 2, rng);
    const auto probs = schmidt_probs(psi);
    const auto eigsA =
        hermitian_eigenvalues(partial_trace(psi.projector(), 3, 2, Subsystem::A));
    const auto eigsB =
        hermitian_eigenvalues(partial_trace(psi.projector(), 3, 2, Subsystem::B));
    // eigsA has an extra zero (rank at most min(dimA, dimB))
    for (std::size_t i = 0; i < probs.size(); ++i) {
      CHECK(std::abs(eigsA[i] - probs[i]) < 1e-8);
      CHECK(std::abs(eigsB[i] - probs[i]) < 1e-8);
    }
    CHECK(std::abs(eigsA.back()) < 1e-8);
  }
}

TEST_CASE("partial transpose is an involution") {
  Rng rng(24);
  const PureState psi = haar_random_state(2, 3, rng);
  const Matrix rho = psi.projector();
  const Matrix twice = partial_transpose(partial_transpose(rho, 2, 3), 2, 3);
  CHECK((twice - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial transpose of Bell state has eigenvalue -1/2") {
  const Matrix pt = partial_transpose(bell_phi_plus().projector(), 2, 2);
  const auto eigs = hermitian_eigenvalues(pt);
  CHECK(eigs.back() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(eigs.front() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose of a product state stays PSD") {
  Rng rng(25);
  const PureState a = haar_random_state(2, 1, rng);
  const PureState b = haar_random_state(2, 1, rng);
  const Matrix rho = tensor_product(a.projector(), b.projector());
  const Matrix pt = partial_transpose(rho, 2, 2);
  CHECK((pt - tensor_product(a.projector(), b.projector().transpose()))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(hermitian_eigenvalues(pt).back() > -1e-12);
}

TEST_CASE("hermitian eigenvalues") {
  CHECK(hermitian_eigenvalues(Matrix::Identity(3, 3)) ==
        std::vector<double>{1.0, 1.0, 1.0});

  Matrix pauli_x = Matrix::Zero(2, 2);
  pauli_x(0, 1) = 1.0;
  pauli_x(1, 0) = 1.0;
  const auto eigs = hermitian_eigenvalues(pauli_x);
  CHECK(eigs[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("spectrum is invariant under unitary conjugation") {
  Rng rng(26);
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.7;
  diag(1, 1) = 0.3;
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix u = haar_unitary(2, rng);
    const auto eigs = hermitian_eigenvalues(u * diag * u.adjoint());
    CHECK(std::abs(eigs[0] - 0.7) < 1e-8);
    CHECK(std::abs(eigs[1] - 0.3) < 1e-8);
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_WITH((void)hermitian_eigenvalues(m), "not Hermitian");
}

TEST_CASE("schmidt probabilities of simple states") {
  const auto product = schmidt_probs(basis_state(2, 2, 0, 0));
  REQUIRE(product.size() == 2);
  CHECK(product[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(product[1] == doctest::Approx(0.0).epsilon(1e-12));

  const auto bell = schmidt_probs(bell_phi_plus());
  CHECK(bell[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(bell[1] == doctest::Approx(0.5).epsilon(1e-12));

  const auto skew = schmidt_probs(schmidt_state(0.9));
  CHECK(skew[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(skew[1] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("pure state validation") {
  CVector bad(4);
  bad << 0.5, 0.0, 0.0, 0.0;
  CHECK_THROWS_WITH((void)make_pure_state(2, 2, bad), "state not normalized");
  CVector wrong(3);
  wrong << 1.0, 0.0, 0.0;
  CHECK_THROWS_WITH((void)make_pure_state(2, 2, wrong), "shape error");
}

TEST_CASE("density validation") {
  Matrix notpsd = Matrix::Zero(2, 2);
  notpsd(0, 0) = 1.5;
  notpsd(1, 1) = -0.5;
  CHECK_THROWS_WITH((void)make_density(notpsd), "not PSD");
  CHECK_NOTHROW((void)make_density(Matrix::Identity(2, 2) * 0.5));
}
