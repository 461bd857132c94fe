#pragma once

#include "ddqe/matrix.hpp"

namespace ddqe {

/// exp(scale * A).
///
/// Hermitian A (to 1e-12) goes through the spectral decomposition; 2x2
/// traceless Hermitian input short-circuits to the closed Pauli-rotation
/// form. Anything else falls back to scaling-and-squaring with a Pade
/// approximant. Throws std::domain_error on non-finite input.
ComplexMatrix mat_exp(const ComplexMatrix& A, cplx scale);

/// exp(a*1 + bx*sx + by*sy + bz*sz) for complex coefficients, via
/// cosh/sinh of r = sqrt(bx^2+by^2+bz^2) (branch-free: the functions used
/// are even in r). This is the workhorse for pointwise 2x2 exponentials.
Matrix2c pauli_exp(cplx a, cplx bx, cplx by, cplx bz);

}  // namespace ddqe
