#include <doctest.h>

#include "ddqe/density.hpp"
#include "ddqe/haar.hpp"
#include "ddqe/mat_exp.hpp"
#include "ddqe/rng.hpp"

using namespace ddqe;

TEST_SUITE_BEGIN("qcore");

TEST_CASE("mat_exp identity and pauli rotation") {
  const ComplexMatrix sz = pauli::z();
  CHECK(max_abs(mat_exp(sz, 0.0) - ComplexMatrix::Identity(2, 2)) < 1e-15);
  // exp(-i pi/2 sz) = -i sz
  const ComplexMatrix r = mat_exp(sz, -I * M_PI / 2.0);
  CHECK(max_abs(r - (-I) * sz) < 1e-14);
}

TEST_CASE("mat_exp matches the eigendecomposition oracle at d=4") {
  RngStream rng(7);
  ComplexMatrix h(4, 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) h(i, j) = cplx(rng.gaussian(), rng.gaussian());
  h = hermitize(h);
  const double t = 1.37;
  // independent oracle: spectral decomposition assembled by hand
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k)
    expected += std::exp(-I * es.eigenvalues()(k) * t) * es.eigenvectors().col(k) *
                es.eigenvectors().col(k).adjoint();
  CHECK(max_abs(mat_exp(h, -I * t) - expected) < 1e-12);
}

TEST_CASE("mat_exp inverse pairing for Hermitian input") {
  RngStream rng(8);
  for (int d : {2, 3, 5}) {
    ComplexMatrix h(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) h(i, j) = cplx(rng.gaussian(), rng.gaussian());
    h = hermitize(h);
    const cplx s = cplx(0.0, rng.uniform(-10.0, 10.0));
    const ComplexMatrix p = mat_exp(h, s) * mat_exp(h, -s);
    CHECK(max_abs(p - ComplexMatrix::Identity(d, d)) < 1e-11);
  }
}

TEST_CASE("mat_exp rejects non-finite input") {
  ComplexMatrix bad(2, 2);
  bad << 1.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 1.0;
  CHECK_THROWS_AS(mat_exp(bad, 1.0), std::domain_error);
}

TEST_CASE("mat_exp handles non-Hermitian input via Pade") {
  ComplexMatrix n(2, 2);
  n << 0.0, 1.0, 0.0, 0.0;  // nilpotent: exp(a N) = 1 + a N
  const ComplexMatrix r = mat_exp(n, cplx(0.7, 0.3));
  ComplexMatrix expected = ComplexMatrix::Identity(2, 2) + cplx(0.7, 0.3) * n;
  CHECK(max_abs(r - expected) < 1e-13);
}

TEST_CASE("haar d=1 is a pure phase") {
  RngStream rng(9);
  const ComplexMatrix w = haar_unitary(1, rng);
  CHECK(std::abs(std::abs(w(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("haar unitarity") {
  RngStream rng(10);
  for (int d : {2, 3, 6}) {
    const ComplexMatrix w = haar_unitary(d, rng);
    CHECK(max_abs(w * w.adjoint() - ComplexMatrix::Identity(d, d)) < 1e-12);
  }
}

TEST_CASE("haar first and second moments") {
  // E[W X W^dag] = Tr(X)/d 1 ; E[(W sz W^dag) sz (W sz W^dag)] = -sz/3
  RngStream rng(11);
  const int n = 100000;
  const ComplexMatrix sz = pauli::z();
  ComplexMatrix m1 = ComplexMatrix::Zero(2, 2), m2 = ComplexMatrix::Zero(2, 2);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix w = haar_unitary(2, rng);
    const ComplexMatrix a = w * sz * w.adjoint();
    m1 += a;
    m2 += a * sz * a;
  }
  m1 /= n;
  m2 /= n;
  const double tol = 3.0 / std::sqrt(double(n));
  CHECK(max_abs(m1) < tol);
  CHECK(max_abs(m2 + sz / 3.0) < 4.0 * tol);
}

TEST_CASE("bloch map basics") {
  ComplexVector down(2), plus(2);
  down << 0.0, 1.0;
  plus << 1.0, 1.0;
  const BlochVector a = bloch_map(DensityMatrix::pure(down).matrix());
  CHECK(a.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(a.z == doctest::Approx(-1.0).epsilon(1e-12));
  const BlochVector c = bloch_map(DensityMatrix::maximally_mixed(2).matrix());
  CHECK(std::abs(c.x) + std::abs(c.y) + std::abs(c.z) < 1e-14);
  const BlochVector p = bloch_map(DensityMatrix::pure(plus).matrix());
  CHECK(p.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(p.y) + std::abs(p.z) < 1e-14);
  CHECK_THROWS(bloch_map(ComplexMatrix::Identity(3, 3) / 3.0));
}

TEST_CASE("bloch round trip on the unit ball") {
  RngStream rng(12);
  for (int k = 0; k < 200; ++k) {
    BlochVector a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (a.norm() > 1.0) {
      const double n = a.norm();
      a.x /= n;
      a.y /= n;
      a.z /= n;
    }
    const BlochVector b = bloch_map(density_from_bloch(a));
    CHECK(std::abs(a.x - b.x) < 1e-12);
    CHECK(std::abs(a.y - b.y) < 1e-12);
    CHECK(std::abs(a.z - b.z) < 1e-12);
  }
}

TEST_CASE("purity values and unitary invariance") {
  ComplexVector psi(2);
  psi << 0.6, cplx(0.0, 0.8);
  CHECK(purity(DensityMatrix::pure(psi).matrix()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(purity(DensityMatrix::maximally_mixed(2).matrix()) ==
        doctest::Approx(0.5).epsilon(1e-12));
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  CHECK(purity(diag) == doctest::Approx(0.625).epsilon(1e-12));

  RngStream rng(13);
  const ComplexMatrix u = haar_unitary(2, rng);
  CHECK(std::abs(purity(u * diag * u.adjoint()) - purity(diag)) < 1e-12);
}

TEST_CASE("density matrix validation") {
  CHECK_THROWS_AS(DensityMatrix{pauli::z()}, std::domain_error);  // trace 0
  ComplexMatrix nonherm(2, 2);
  nonherm << 0.5, 0.1, 0.3, 0.5;
  CHECK_THROWS_AS(DensityMatrix{nonherm}, std::domain_error);
  ComplexMatrix neg(2, 2);
  neg << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix{neg}, std::domain_error);
}

TEST_CASE("gaussian variates: determinism, sd=0, CLT") {
  RngStream a(42, 3), b(42, 3);
  for (int k = 0; k < 100; ++k) CHECK(a.gaussian() == b.gaussian());

  RngStream c(42, 4);
  CHECK(c.gaussian(2.5, 0.0) == 2.5);
  CHECK_THROWS_AS(c.gaussian(0.0, -1.0), std::domain_error);

  RngStream d(42, 5);
  const int n = 1000000;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += d.gaussian(1.0, 2.0);
  CHECK(std::abs(sum / n - 1.0) < 4.0 * 2.0 / std::sqrt(double(n)));
}

TEST_CASE("distinct streams decorrelate") {
  RngStream a(42, 0), b(42, 1);
  int equal = 0;
  for (int k = 0; k < 64; ++k)
    if (a.next_u64() == b.next_u64()) ++equal;
  CHECK(equal == 0);
}

TEST_SUITE_END();
