#include "ebit/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebit {

Matrix PureState::amplitude_matrix() const {
  Matrix m(dimA, dimB);
  for (int a = 0; a < dimA; ++a)
    for (int b = 0; b < dimB; ++b) m(a, b) = amps(a * dimB + b);
  return m;
}

Matrix PureState::projector() const { return amps * amps.adjoint(); }

PureState make_pure_state(int dimA, int dimB, CVector amps) {
  if (dimA < 1 || dimB < 1 ||
      amps.size() != static_cast<Eigen::Index>(dimA) * dimB)
    throw std::invalid_argument("shape error");
  if (std::abs(amps.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("state not normalized");
  return PureState{dimA, dimB, std::move(amps)};
}

Density make_density(Matrix m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("shape error");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kHermitianTol ||
      std::abs(m.trace().imag()) > kHermitianTol)
    throw std::invalid_argument("trace not one");
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym,
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor)
    throw std::invalid_argument("not PSD");
  return Density{static_cast<int>(sym.rows()), std::move(sym)};
}

Density density_of(const PureState& psi) {
  return Density{psi.dim(), psi.projector()};
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * b.rows();
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * b.cols();
  if (rows * cols > kElementCap)
    throw std::invalid_argument("dimension overflow");
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& rho, int dimA, int dimB, Subsystem keep) {
  if (rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(dimA) * dimB)
    throw std::invalid_argument("shape error");
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dimA, dimA);
    for (int a = 0; a < dimA; ++a)
      for (int a2 = 0; a2 < dimA; ++a2)
        for (int b = 0; b < dimB; ++b)
          out(a, a2) += rho(a * dimB + b, a2 * dimB + b);
    return out;
  }
  Matrix out = Matrix::Zero(dimB, dimB);
  for (int b = 0; b < dimB; ++b)
    for (int b2 = 0; b2 < dimB; ++b2)
      for (int a = 0; a < dimA; ++a)
        out(b, b2) += rho(a * dimB + b, a * dimB + b2);
  return out;
}

Density partial_trace(const Density& rho, int dimA, int dimB, Subsystem keep) {
  Matrix red = partial_trace(rho.mat, dimA, dimB, keep);
  red = 0.5 * (red + red.adjoint().eval());
  return Density{static_cast<int>(red.rows()), std::move(red)};
}

Matrix partial_transpose(const Matrix& rho, int dimA, int dimB) {
  if (rho.rows() != rho.cols() ||
      rho.rows() != static_cast<Eigen::Index>(dimA) * dimB)
    throw std::invalid_argument("shape error");
  Matrix out(rho.rows(), rho.cols());
  for (int a = 0; a < dimA; ++a)
    for (int a2 = 0; a2 < dimA; ++a2)
      for (int b = 0; b < dimB; ++b)
        for (int b2 = 0; b2 < dimB; ++b2)
          out(a * dimB + b, a2 * dimB + b2) = rho(a * dimB + b2, a2 * dimB + b);
  return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("shape error");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("not Hermitian");
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + sym.rows());
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

std::vector<double> schmidt_probs(const PureState& psi) {
  Eigen::JacobiSVD<Matrix> svd(psi.amplitude_matrix());
  std::vector<double> probs;
  probs.reserve(svd.singularValues().size());
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    double s = svd.singularValues()(i);
    probs.push_back(s * s);
  }
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return probs;
}

}  // namespace ebit
