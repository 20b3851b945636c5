#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncs/nctorus.hpp"

using namespace ncs;

namespace {
TorusParams ref() { return torus_params(cd(0, 1.2), 0.3, 0.4); }
}

TEST_CASE("crossed product multiplication shifts the right factor") {
  double eta = 0.3;
  NCTElement a = NCTElement::monomial(eta, 1, cf_leaf([](cd u) { return Jet{u, 1.0, 0.0}; }));
  NCTElement b = NCTElement::monomial(eta, 0, cf_leaf([](cd u) { return Jet{u * u, 2.0 * u, 0.0}; }));
  NCTElement ab = a * b;
  cd u(0.2, 0.1);
  // u W (u^2) = u (u + eta)^2 W
  CHECK(std::abs(ab.coeff(1, u) - u * (u + eta) * (u + eta)) < 1e-15);
  CHECK(std::abs(ab.coeff(0, u)) == 0.0);
}

TEST_CASE("trace is the mean of the degree zero term") {
  NCTElement one = NCTElement::scalar(0.3, 2.5);
  CHECK(std::abs(trace_chi(one) - 2.5) < 1e-15);
}

TEST_CASE("degree cap raises a capacity error") {
  NCTElement w = NCTElement::monomial(0.3, 1, cf_const(1.0));
  w.max_degree = 2;
  NCTElement w2 = w * w;
  CHECK_THROWS_AS(w2 * w, Error);
}

TEST_CASE("generators satisfy the relations and are self-adjoint") {
  GeneratorSet G = generators(ref());
  for (double r : relation_residuals(G)) CHECK(r < 1e-11);
  for (int mu = 0; mu < 4; ++mu) CHECK(self_adjoint_residual(G.S[mu]) < 1e-12);
  for (double r : casimir_residuals(G)) CHECK(r < 1e-11);
}

TEST_CASE("theta J matches its algebraic constraint") {
  auto J = sklyanin_J(ref());
  // J1 + J2 + J3 + J1 J2 J3 = 0
  CHECK(std::abs(J[0] + J[1] + J[2] + J[0] * J[1] * J[2]) < 1e-12);
}

TEST_CASE("derivation_m needs the m channel") {
  GeneratorSet G = generators(ref());
  CHECK_NOTHROW(derivation_m(G.S[0]));
  CHECK_NOTHROW(derivation_m(G.S[0] * G.S[1]));
  CHECK_THROWS_AS(derivation_m(derivation(2, G.S[0])), Error);
}

TEST_CASE("simplified form identities") {
  TorusParams P = ref();
  GeneratorSet G = generators(P);
  SimplifiedData D = simplified_generators(P);
  for (double r : equivalence_residuals(G, D)) CHECK(r < 1e-10);
  CHECK(lemrho2_residual(D, P) < 1e-10);
  CHECK(ww_rule_residual(D, P) < 1e-10);
  CHECK(cross_rule_residual(D, P) < 1e-10);
  DeltaFit f = measure_delta(D, P);
  CHECK(f.spread < 1e-10);
  CHECK(f.delta.real() == doctest::Approx(0.844746).epsilon(1e-5));
}
