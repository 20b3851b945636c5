#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncs/moduli.hpp"

using namespace ncs;

TEST_CASE("reduction into [0, pi)") {
  PhiPoint p(-0.2, PI + 0.3, 0.5);
  CHECK(p[0] == doctest::Approx(PI - 0.2));
  CHECK(p[1] == doctest::Approx(0.3));
}

TEST_CASE("Weyl group") {
  const auto& W = weyl_group();
  CHECK(W.size() == 24);
  PhiPoint p(1.1, 0.8, 0.4);
  // every element keeps the generic case
  for (const auto& w : W) CHECK(classify(w.apply(p)).case_id == CaseId::Generic);
}

TEST_CASE("case labels of representative points") {
  CHECK(classify(PhiPoint(1.1, 0.8, 0.4)).case_id == CaseId::Generic);
  CHECK(classify(PhiPoint(0.7, 0.7, 0.3)).case_id == CaseId::EvenFace);
  CHECK(classify(PhiPoint(0, 0, 0)).case_id != CaseId::Generic);
}

TEST_CASE("trig invariants and infinities") {
  TrigInvariants t = trig_invariants(PhiPoint(1.1, 0.8, 0.4));
  for (int k = 0; k < 3; ++k) CHECK(t.s[k].finite());
  // alpha_k = -J_lm
  auto J = J_values(PhiPoint(1.1, 0.8, 0.4));
  for (int k = 0; k < 3; ++k) CHECK(t.alpha[k].v == doctest::Approx(-t.J[k].v));
  CHECK(J.size() == 3);
}

TEST_CASE("scale factors") {
  PhiPoint p(1.1, 0.8, 0.4);
  CHECK(scale_factor_residual(p, scale_factors(p)) < 1e-12);
}

TEST_CASE("scaling flow conserves J") {
  PhiPoint p(1.1, 0.8, 0.4);
  CHECK(J_drift(p, 0.1, 200) < 1e-9);
  CHECK(s_scaling_residual(p) < 1e-12);
}

TEST_CASE("duality maps are involutions") {
  PhiPoint p(1.1, 0.8, 0.4);
  for (int j = 1; j <= 3; ++j) {
    PhiPoint q = duality(j, duality(j, p));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(std::remainder(q[k] - p[k], PI)) < 1e-12);
  }
}

TEST_CASE("rho map and s tilde") {
  std::array<double, 3> s{2.0, 3.0, 5.0};
  auto r = rho_map(s);
  CHECK(r[0] == doctest::Approx((3.0 - 5.0) / 2.0));
  auto st = s_tilde(s);
  CHECK(st[0] == doctest::Approx((-2.0 + 3.0 + 5.0) / 15.0));
}
