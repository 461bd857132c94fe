#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace ddqe {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

inline constexpr cplx I{0.0, 1.0};

namespace pauli {
inline ComplexMatrix id(int d = 2) { return ComplexMatrix::Identity(d, d); }
inline ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, -I, I, 0;
  return m;
}
inline ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline ComplexMatrix plus() {  // |up><down|
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}
inline ComplexMatrix minus() {  // |down><up|
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}
inline ComplexMatrix proj_up() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1;
  return m;
}
inline ComplexMatrix proj_down() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 1) = 1;
  return m;
}
}  // namespace pauli

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

/// L rho L^dag - 1/2 {L^dag L, rho}
inline ComplexMatrix lindblad_dissipator(const ComplexMatrix& L, const ComplexMatrix& rho) {
  ComplexMatrix LdL = L.adjoint() * L;
  return L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) throw std::domain_error(std::string(what) + ": non-finite entries");
}

/// (m + m^dag)/2
inline ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

inline double hermiticity_drift(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

/// Superoperators act on column-major vec(rho).
using SuperOp = Eigen::MatrixXcd;

inline ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

inline ComplexMatrix unvec(const ComplexVector& v, int d) {
  return Eigen::Map<const ComplexMatrix>(v.data(), d, d);
}

/// Superoperator for rho -> A rho B, i.e. kron(B^T, A).
inline SuperOp sandwich_superop(const ComplexMatrix& A, const ComplexMatrix& B) {
  const int d = static_cast<int>(A.rows());
  SuperOp s(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      s.block(j * d, i * d, d, d) = B(i, j) * A;
  return s;
}

/// rho -> A rho
inline SuperOp left_superop(const ComplexMatrix& A) {
  return sandwich_superop(A, ComplexMatrix::Identity(A.rows(), A.cols()));
}

/// rho -> rho B
inline SuperOp right_superop(const ComplexMatrix& B) {
  return sandwich_superop(ComplexMatrix::Identity(B.rows(), B.cols()), B);
}

/// sin(x)/x, continuous at 0 (unnormalized convention).
inline double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace ddqe
