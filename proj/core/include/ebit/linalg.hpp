#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace ebit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Tolerances shared by the whole library.  Entropies are in bits.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kEigenvalueFloor = -1e-9;

// Matrices larger than this many entries are rejected up front.
inline constexpr std::size_t kElementCap = std::size_t{1} << 22;

enum class Subsystem { A, B };

// Normalized bipartite pure state.  Amplitude index convention: a*dimB + b
// (the A index is the slow one); every module uses this single convention.
struct PureState {
  int dimA = 0;
  int dimB = 0;
  CVector amps;

  int dim() const { return dimA * dimB; }

  // amps reshaped as the dimA x dimB coefficient matrix.
  Matrix amplitude_matrix() const;
  Matrix projector() const;
};

// Throws std::invalid_argument("state not normalized") if the norm is off
// by more than kNormTol, and "shape error" on a size mismatch.
PureState make_pure_state(int dimA, int dimB, CVector amps);

// Hermitian, PSD (within kEigenvalueFloor), unit-trace matrix.
struct Density {
  int dim = 0;
  Matrix mat;
};

// Validates Hermiticity, trace and positivity.  Throws std::invalid_argument
// with "not Hermitian", "trace not one" or "not PSD".
Density make_density(Matrix m);

Density density_of(const PureState& psi);

// Kronecker product.  Throws std::invalid_argument("dimension overflow")
// when the result would exceed the element cap.
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Reduced state of the kept subsystem.  rho must be dimA*dimB dimensional,
// otherwise std::invalid_argument("shape error").
Matrix partial_trace(const Matrix& rho, int dimA, int dimB, Subsystem keep);
Density partial_trace(const Density& rho, int dimA, int dimB, Subsystem keep);

// Transpose on the B indices; Hermitian and trace-preserving but in general
// not PSD.
Matrix partial_transpose(const Matrix& rho, int dimA, int dimB);

// Full real spectrum, descending.  Symmetrizes (M+M^dag)/2 before solving;
// throws std::invalid_argument("not Hermitian") beyond kHermitianTol.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

// Squared Schmidt coefficients, descending, summing to 1.
std::vector<double> schmidt_probs(const PureState& psi);

}  // namespace ebit
