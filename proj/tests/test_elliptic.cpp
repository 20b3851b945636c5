#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncs/elliptic.hpp"

using namespace ncs;

namespace {
const PhiPoint kPhi = even_frame(PhiPoint(1.1, 0.8, 0.4));
}

TEST_CASE("even frame is ascending") {
  CHECK(kPhi[0] < kPhi[1]);
  CHECK(kPhi[1] < kPhi[2]);
  CHECK(is_even_generic(kPhi));
  CHECK_FALSE(is_even_generic(PhiPoint(0.7, 0.7, 0.3)));
}

TEST_CASE("elliptic triple of the reference point") {
  EllipticTriple T = elliptic_triple(kPhi);
  CHECK(T.M.tau.imag() == doctest::Approx(1.085288).epsilon(1e-6));
  CHECK(T.eta.real() == doctest::Approx(0.237023).epsilon(1e-6));
  CHECK(T.eta.real() > 0);
  CHECK(T.eta.real() < 0.5);
  CHECK(T.prop_residual < 1e-12);
}

TEST_CASE("psi lands on the fiber and sigma shifts by -eta") {
  EllipticTriple T = elliptic_triple(kPhi);
  auto s = s_values(kPhi);
  ResolventTriple st{s[0], s[1], s[2]};
  for (double x : {0.1, 0.37, 0.62}) {
    cd z(x, 0.3 * x);
    CHECK(fiber_residual(psi(z, T), st) < 1e-12);
    CHECK(projective_distance(sigma_cubic(psi(z, T)).c, psi(z - T.eta, T).c) < 1e-10);
  }
}

TEST_CASE("Omega quadrature matches the closed form") {
  EllipticTriple T = elliptic_triple(kPhi);
  JacobianData J = period_Omega(kPhi, T);
  CHECK(std::abs(J.Omega - J.Omega_closed) < 1e-10 * std::abs(J.Omega_closed));
  CHECK(J.Omega.real() == doctest::Approx(12.663061553881).epsilon(1e-10));
}

TEST_CASE("dR by chain rule against finite differences") {
  EllipticTriple T = elliptic_triple(kPhi);
  double m = 0.3, h = 1e-5;
  cd fd = (R_of_m(m + h, kPhi, T) - R_of_m(m - h, kPhi, T)) / (2 * h);
  CHECK(std::abs(dR_of_m(m, kPhi, T) - fd) < 1e-7 * std::abs(fd));
}

TEST_CASE("duality shifts are nonzero half periods") {
  for (int j = 1; j <= 3; ++j) {
    DualShift d = duality_shift(kPhi, j);
    CHECK(d.lambda_gap < 1e-10);
    CHECK(d.residual < 1e-10);
    CHECK((d.half[0] != 0 || d.half[1] != 0));
  }
}
