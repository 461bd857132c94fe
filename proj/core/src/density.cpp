#include "ddqe/density.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace ddqe {

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_finite(m_, "DensityMatrix");
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw std::domain_error("DensityMatrix: not square");
  if (hermiticity_drift(m_) > 1e-12)
    throw std::domain_error("DensityMatrix: not Hermitian to 1e-12");
  if (std::abs(m_.trace() - cplx(1.0)) > 1e-12)
    throw std::domain_error("DensityMatrix: trace != 1 to 1e-12");
  if (min_eigenvalue(m_) < -1e-10)
    throw std::domain_error("DensityMatrix: negative eigenvalue beyond -1e-10");
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) throw std::domain_error("DensityMatrix::pure: zero vector");
  return DensityMatrix(ComplexMatrix(psi * psi.adjoint() / n2));
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

BlochVector bloch_map(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw std::invalid_argument("bloch_map: dimension != 2");
  BlochVector a;
  a.x = std::real(rho(0, 1) + rho(1, 0));
  a.y = std::real(I * (rho(0, 1) - rho(1, 0)));
  a.z = std::real(rho(0, 0) - rho(1, 1));
  return a;
}

ComplexMatrix density_from_bloch(const BlochVector& a) {
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + a.z);
  rho(1, 1) = 0.5 * (1.0 - a.z);
  rho(0, 1) = 0.5 * cplx(a.x, -a.y);
  rho(1, 0) = 0.5 * cplx(a.x, a.y);
  return rho;
}

double purity(const ComplexMatrix& rho) {
  return std::real((rho * rho).trace());
}

double min_eigenvalue(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(rho));
  return es.eigenvalues().minCoeff();
}

}  // namespace ddqe
