#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncs/charvar.hpp"

using namespace ncs;

TEST_CASE("Sklyanin parameters satisfy the constraint") {
  SklyaninParams s = sklyanin_params(PhiPoint(1.1, 0.8, 0.4));
  CHECK(s.constraint_residual() < 1e-13);
}

TEST_CASE("minors agree with the factorized list") {
  PhiPoint p(1.1, 0.8, 0.4);
  Vec4 x{cd(0.3, 0.1), cd(-0.7, 0.2), cd(1.1, -0.4), cd(0.5, 0.9)};
  auto m = minors15(relation_matrix(p, ProjPoint(x, Role::x)));
  auto a = appendix_minors(p, x);
  for (int k = 0; k < 15; ++k) CHECK(std::abs(m[k] - a[k]) < 1e-10 * std::max(1.0, std::abs(a[k])));
}

TEST_CASE("coordinate points lie on the generic variety") {
  SklyaninParams s = sklyanin_params(PhiPoint(1.1, 0.8, 0.4));
  for (int k = 0; k < 4; ++k) {
    Vec4 e{};
    e[k] = 1;
    CHECK(is_on_variety(s, ProjPoint(e, Role::Z)));
  }
  CHECK_FALSE(is_on_variety(s, ProjPoint(Vec4{1, 0.3, 0.7, 0.2}, Role::Z)));
}

TEST_CASE("involutions square to the identity") {
  ProjPoint Z(Vec4{cd(0.3, 0.1), cd(-0.7, 0.2), cd(1.1, -0.4), cd(0.5, 0.9)}, Role::Z);
  for (Involution k : {Involution::I, Involution::I0, Involution::I1, Involution::I2, Involution::I3})
    CHECK(projective_distance(involution(k, involution(k, Z)).c, Z.c) < 1e-14);
}

TEST_CASE("quadratic forms are symmetric") {
  PhiPoint p(1.1, 0.8, 0.4);
  CHECK(form_Q(p).asymmetry() < 1e-14);
  CHECK(form_P(p).asymmetry() < 1e-14);
  CHECK(form_Q2(p).asymmetry() < 1e-14);
  std::vector<QuadraticForm> fs = {form_Q1_sphere(), form_Q2(p)};
  CHECK(stacked_rank(fs) == 2);
}

TEST_CASE("geometric data table loci") {
  std::mt19937_64 g(7);
  for (int c = 0; c < 11; ++c) {
    CaseLoci L = case_loci(CaseId(c), g);
    CHECK(classify(L.phi).case_id == CaseId(c));
    for (const auto& comp : L.comps)
      for (int i = 0; i < 3; ++i) CHECK(is_on_variety(L.src, comp.sample(g)));
  }
}

TEST_CASE("basis change round trip") {
  PhiPoint p(1.1, 0.8, 0.4);
  ProjPoint Z(Vec4{cd(0.3, 0.1), cd(-0.7, 0.2), cd(1.1, -0.4), cd(0.5, 0.9)}, Role::Z);
  ProjPoint u = change_basis(Basis::u_of_Z, Z, p);
  CHECK(projective_distance(change_basis(Basis::Z_of_u, u, p).c, Z.c) < 1e-12);
}
