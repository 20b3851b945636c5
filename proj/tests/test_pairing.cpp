#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncs/pairing.hpp"

using namespace ncs;

TEST_CASE("Levi-Civita sign") {
  CHECK(eps4({0, 1, 2, 3}) == 1);
  CHECK(eps4({1, 0, 2, 3}) == -1);
  CHECK(eps4({1, 2, 3, 0}) == -1);
  CHECK(eps4({0, 0, 2, 3}) == 0);
}

TEST_CASE("cycle identities") {
  PhiPoint p = even_frame(PhiPoint(1.1, 0.8, 0.4));
  CHECK(ending1_residual(p) < 1e-12);
  CHECK(cycle_scaling_residual(p) < 1e-12);
  CHECK_THROWS_AS(chern_cycle(PhiPoint(PI / 2, 0.8, 0.4), CycleVariant::S), Error);
}

TEST_CASE("pairing density equals g(m)") {
  CHECK(orientation_sign() == 1);
  for (double m : {0.2, 0.5, 0.9}) {
    TorusParams P = torus_params(cd(0, 1.2), 0.3, m);
    cd D = pairing_density(P), g = g_closed(P);
    CHECK(std::abs(D / g - 1.0) < 1e-9);
  }
}

TEST_CASE("sigma prime terms drop out") {
  CHECK(resder_residual(torus_params(cd(0, 1.2), 0.3, 0.4)) < 1e-10);
}

TEST_CASE("volume form at one point and on an interval") {
  PhiPoint p = even_frame(PhiPoint(1.1, 0.8, 0.4));
  EllipticTriple T = elliptic_triple(p);
  JacobianData J = period_Omega(p, T);
  VolPoint v = vol_residual(0.217, p, T, J);
  CHECK(v.omega.real() == doctest::Approx(-135.31).epsilon(1e-4));
  CHECK(v.residual < 1e-8);
  double Tm = T.M.tau.imag();
  VolIntegral I = vol_integral(p, T, J, 0.1 * Tm, 0.5 * Tm);
  CHECK(I.residual < 1e-8);
}

TEST_CASE("ratio identities on the real curve") {
  PhiPoint p = even_frame(PhiPoint(1.1, 0.8, 0.4));
  EllipticTriple T = elliptic_triple(p);
  RatioResidual r = ratio_identity_residual(ProjPoint(curve_Z(0.3, T), Role::Z), p);
  CHECK(r.rat1 < 1e-10);
  CHECK(r.rat2 < 1e-10);
  // a point off F_phi(0) is rejected
  Vec4 bad{1.0, cd(0.2, 0.3), cd(0.5, -0.1), 0.7};
  CHECK_THROWS_AS(ratio_identity_residual(ProjPoint(bad, Role::Z), p), Error);
}

TEST_CASE("derivative lemma") {
  ModularParam M = ModularParam::make(cd(0, 1.1));
  CHECK(derivative_lemma_residual(cd(0.13, 0.05), 1.3, cd(0.4, -0.2), M) < 1e-10);
}
