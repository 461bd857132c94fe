#pragma once

#include <array>

#include "ddqe/matrix.hpp"

namespace ddqe {

/// Validated density matrix: Hermitian to 1e-12, unit trace to 1e-12,
/// eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  /// Pure state |psi><psi| (psi need not be normalized).
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int d);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

struct BlochVector {
  double x = 0, y = 0, z = 0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// a_i = Tr[rho sigma_i]; convention rho = (1 + a.sigma)/2. d != 2 throws.
BlochVector bloch_map(const ComplexMatrix& rho);
ComplexMatrix density_from_bloch(const BlochVector& a);

/// Tr[rho^2]
double purity(const ComplexMatrix& rho);

double min_eigenvalue(const ComplexMatrix& rho);

}  // namespace ddqe
