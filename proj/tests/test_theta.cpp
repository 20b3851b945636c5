#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncs/proj.hpp"
#include "ncs/theta.hpp"

using namespace ncs;

TEST_CASE("theta parity and quasi-periodicity") {
  ModularParam M = ModularParam::make(cd(0.1, 1.3));
  cd z(0.21, 0.17);
  CHECK(std::abs(theta(1, -z, M) + theta(1, z, M)) < 1e-14);
  for (int j = 2; j <= 4; ++j) CHECK(std::abs(theta(j, -z, M) - theta(j, z, M)) < 1e-14);
  // theta_1(z + 1) = -theta_1(z)
  CHECK(std::abs(theta(1, z + 1.0, M) + theta(1, z, M)) < 1e-13);
  // theta_1(z + tau) = -exp(-pi i tau - 2 pi i z) theta_1(z)
  cd f = -std::exp(-PI * I * M.tau - 2.0 * PI * I * z);
  CHECK(std::abs(theta(1, z + M.tau, M) - f * theta(1, z, M)) < 1e-12);
}

TEST_CASE("Jacobi identity and derivative at the origin") {
  ModularParam M = ModularParam::make(cd(0, 0.8));
  cd t2 = theta(2, 0, M), t3 = theta(3, 0, M), t4 = theta(4, 0, M);
  CHECK(std::abs(std::pow(t3, 4) - std::pow(t2, 4) - std::pow(t4, 4)) < 1e-13);
  CHECK(std::abs(theta(1, 0, M, 1) - PI * t2 * t3 * t4) < 1e-12);
  cd z(0.3, 0.05), h = 1e-5;
  cd fd = (theta(3, z + h, M) - theta(3, z - h, M)) / (2.0 * h);
  CHECK(std::abs(fd - theta_dz(3, z, M)) < 1e-8);
}

TEST_CASE("sixteen relations at a fixed point") {
  ModularParam M = ModularParam::make(cd(-0.2, 1.1));
  for (int r = 1; r <= 16; ++r)
    CHECK(theta_relation_residual(r, cd(0.1, 0.2), cd(-0.3, 0.05), cd(0.07, -0.1), cd(0.2, 0.3), M) < 1e-12);
}

TEST_CASE("lambda round trip and reduction") {
  for (cd tau : {cd(0, 1.0), cd(0.3, 0.9), cd(-0.45, 1.7)}) {
    ModularParam M = ModularParam::make(tau);
    cd lam = lambda_of_tau(M);
    ModularParam B = tau_of_lambda(lam);
    CHECK(std::abs(lambda_of_tau(B) - lam) < 1e-11 * std::max(1.0, std::abs(lam)));
  }
  // lambda(i) = 1/2
  CHECK(std::abs(lambda_of_tau(ModularParam::make(cd(0, 1))) - 0.5) < 1e-13);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModularParam::make(cd(0, -1)), Error);
  CHECK_THROWS_AS(ProjPoint(Vec4{0, 0, 0, 0}), Error);
}

TEST_CASE("projective helpers") {
  Vec4 a{1, 2, cd(0, 3), 4};
  Vec4 b{cd(0, 2), cd(0, 4), -6.0, cd(0, 8)};
  CHECK(projective_distance(a, b) < 1e-15);
  CHECK(projective_equal(ProjPoint(a), ProjPoint(b)));
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = double(i + 1);
  CHECK(std::abs(det4(m) - 24.0) < 1e-14);
}
