#pragma once
#include <array>
#include <string>

#include "ncs/theta.hpp"

namespace ncs {

using Vec4 = std::array<cd, 4>;
using Mat4 = std::array<Vec4, 4>;
using Mat64 = std::array<Vec4, 6>;

enum class Role { x, y, Y, Z, u };
const char* role_name(Role r);

struct ProjPoint {
  Vec4 c{};
  Role role = Role::Z;

  ProjPoint() = default;
  ProjPoint(Vec4 v, Role r = Role::Z);  // throws on the zero vector
  cd operator[](int i) const { return c[i]; }
  double sup() const;
  ProjPoint normalized() const;  // largest-modulus coordinate set to 1
};

bool projective_equal(const ProjPoint& a, const ProjPoint& b, double tol = 1e-9);
// max coordinate gap after normalizing both by the same pivot
double projective_distance(const Vec4& a, const Vec4& b);

cd det3(const Vec4& r0, const Vec4& r1, const Vec4& r2, int skip);
cd det4(const Mat4& m);
Vec4 mat_vec(const Mat4& m, const Vec4& v);
Mat4 mat_mul(const Mat4& a, const Mat4& b);
// null vector from the 3x4 cofactors of the best-conditioned row triple
Vec4 null_vector(const Mat64& m);
double sup_norm(const Vec4& v);

}  // namespace ncs
