#include "ddqe/mat_exp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ddqe {

namespace {

// cosh(sqrt(z)) and sinh(sqrt(z))/sqrt(z); even functions of sqrt(z).
void cosh_sinhc_of_sqrt(cplx z, cplx& ch, cplx& shc) {
  const cplx r = std::sqrt(z);
  if (std::abs(r) < 1e-6) {
    // series in z: cosh = 1 + z/2 + z^2/24, sinhc = 1 + z/6 + z^2/120
    ch = 1.0 + z / 2.0 + z * z / 24.0;
    shc = 1.0 + z / 6.0 + z * z / 120.0;
    return;
  }
  ch = std::cosh(r);
  shc = std::sinh(r) / r;
}

ComplexMatrix pade_exp(const ComplexMatrix& M) {
  // Scaling and squaring with the [6/6] Pade approximant.
  const double nrm = M.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  if (nrm > 0.5) s = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const ComplexMatrix A = M / std::pow(2.0, s);
  const int d = static_cast<int>(A.rows());
  const ComplexMatrix A2 = A * A;
  const ComplexMatrix A4 = A2 * A2;
  const ComplexMatrix A6 = A4 * A2;
  const ComplexMatrix Id = ComplexMatrix::Identity(d, d);
  // [6/6] coefficients
  const double b[7] = {720, 360, 156, 40, 10, 1.5, 1.0 / 12.0};
  ComplexMatrix U = A * (b[1] * Id + b[3] * A2 + b[5] * A4);
  ComplexMatrix V = b[0] * Id + b[2] * A2 + b[4] * A4 + b[6] * A6;
  ComplexMatrix R = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

}  // namespace

Matrix2c pauli_exp(cplx a, cplx bx, cplx by, cplx bz) {
  cplx ch, shc;
  cosh_sinhc_of_sqrt(bx * bx + by * by + bz * bz, ch, shc);
  const cplx ea = std::exp(a);
  Matrix2c m;
  m(0, 0) = ea * (ch + shc * bz);
  m(0, 1) = ea * shc * (bx - I * by);
  m(1, 0) = ea * shc * (bx + I * by);
  m(1, 1) = ea * (ch - shc * bz);
  return m;
}

ComplexMatrix mat_exp(const ComplexMatrix& A, cplx scale) {
  require_finite(A, "mat_exp");
  const int d = static_cast<int>(A.rows());
  if (d == 1) {
    ComplexMatrix r(1, 1);
    r(0, 0) = std::exp(scale * A(0, 0));
    return r;
  }
  const bool hermitian = hermiticity_drift(A) <= 1e-12 * std::max(1.0, max_abs(A));
  if (hermitian && d == 2) {
    // A = c*1 + b.sigma with real c, b
    const double c = 0.5 * std::real(A(0, 0) + A(1, 1));
    const double bz = 0.5 * std::real(A(0, 0) - A(1, 1));
    const double bx = std::real(A(0, 1));
    const double by = -std::imag(A(0, 1));
    return pauli_exp(scale * c, scale * bx, scale * by, scale * bz);
  }
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(A));
    ComplexVector ph(d);
    for (int i = 0; i < d; ++i) ph(i) = std::exp(scale * es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  }
  return pade_exp(scale * A);
}

}  // namespace ddqe
