#include "ncs/proj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncs {

const char* role_name(Role r) {
  switch (r) {
    case Role::x: return "x";
    case Role::y: return "y";
    case Role::Y: return "Y";
    case Role::Z: return "Z";
    case Role::u: return "u";
  }
  return "?";
}

double sup_norm(const Vec4& v) {
  double m = 0;
  for (auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

ProjPoint::ProjPoint(Vec4 v, Role r) : c(v), role(r) {
  double m = sup_norm(v);
  if (!(m > 0) || !std::isfinite(m)) throw Error(ErrKind::Usage, "invalid projective point");
}

double ProjPoint::sup() const { return sup_norm(c); }

ProjPoint ProjPoint::normalized() const {
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(c[i]) > std::abs(c[k])) k = i;
  ProjPoint p = *this;
  cd piv = c[k];
  for (auto& x : p.c) x /= piv;
  return p;
}

double projective_distance(const Vec4& a, const Vec4& b) {
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(a[i]) > std::abs(a[k])) k = i;
  if (std::abs(b[k]) < 1e-300) return std::numeric_limits<double>::infinity();
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] / a[k] - b[i] / b[k]));
  return d;
}

bool projective_equal(const ProjPoint& a, const ProjPoint& b, double tol) {
  return projective_distance(a.c, b.c) < tol;
}

cd det3(const Vec4& r0, const Vec4& r1, const Vec4& r2, int skip) {
  int c[3], n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != skip) c[n++] = i;
  return r0[c[0]] * (r1[c[1]] * r2[c[2]] - r1[c[2]] * r2[c[1]]) -
         r0[c[1]] * (r1[c[0]] * r2[c[2]] - r1[c[2]] * r2[c[0]]) +
         r0[c[2]] * (r1[c[0]] * r2[c[1]] - r1[c[1]] * r2[c[0]]);
}

cd det4(const Mat4& m) {
  cd d = 0;
  for (int j = 0; j < 4; ++j) {
    double sg = (j % 2 == 0) ? 1.0 : -1.0;
    d += sg * m[0][j] * det3(m[1], m[2], m[3], j);
  }
  return d;
}

Vec4 mat_vec(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += m[i][j] * v[j];
  return r;
}

Mat4 mat_mul(const Mat4& a, const Mat4& b) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Vec4 null_vector(const Mat64& m) {
  // the generalized cross product of three rows is orthogonal to all three
  Vec4 best{};
  double bn = -1;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        Vec4 v;
        for (int j = 0; j < 4; ++j) {
          double sg = (j % 2 == 0) ? 1.0 : -1.0;
          v[j] = sg * det3(m[a], m[b], m[c], j);
        }
        double n = sup_norm(v);
        if (n > bn) {
          bn = n;
          best = v;
        }
      }
  return best;
}

}  // namespace ncs
