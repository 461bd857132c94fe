#pragma once

#include "ddqe/matrix.hpp"
#include "ddqe/rng.hpp"

namespace ddqe {

/// Haar-distributed unitary, d >= 1: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction (Mezzadri's recipe). d == 1 reduces to a
/// uniform phase.
ComplexMatrix haar_unitary(int d, RngStream& rng);

}  // namespace ddqe
