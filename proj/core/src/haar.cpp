#include "ddqe/haar.hpp"

#include <Eigen/QR>
#include <stdexcept>

namespace ddqe {

ComplexMatrix haar_unitary(int d, RngStream& rng) {
  if (d < 1) throw std::domain_error("haar_unitary: d < 1");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix G(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      G(i, j) = cplx(rng.gaussian(), rng.gaussian()) * inv_sqrt2;
  if (d == 1) {
    ComplexMatrix W(1, 1);
    W(0, 0) = G(0, 0) / std::abs(G(0, 0));
    return W;
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    cplx r = R(j, j);
    const double a = std::abs(r);
    Q.col(j) *= (a > 0.0) ? r / a : cplx(1.0, 0.0);
  }
  return Q;
}

}  // namespace ddqe
