#include "ncs/charvar.hpp"

#include <algorithm>
#include <cmath>

namespace ncs {

double SklyaninParams::constraint_residual() const {
  if (alpha.inf || beta.inf || gamma.inf) return 0;
  return std::abs(alpha.v + beta.v + gamma.v + alpha.v * beta.v * gamma.v);
}

SklyaninParams sklyanin_params(const PhiPoint& p) {
  TrigInvariants T = trig_invariants(p);
  SklyaninParams s;
  CExt* out[3] = {&s.alpha, &s.beta, &s.gamma};
  for (int k = 0; k < 3; ++k) {
    const Ext& a = T.alpha[k];
    if (a.kind == Ext::Indeterminate)
      throw Error(ErrKind::Classification, "Sklyanin parameter indeterminate at this phi");
    out[k]->inf = (a.kind == Ext::Infinite);
    out[k]->v = a.finite() ? a.v : 0.0;
  }
  return s;
}

namespace {

void require_role(const ProjPoint& p, std::initializer_list<Role> ok, const char* what) {
  for (Role r : ok)
    if (p.role == r) return;
  throw Error(ErrKind::Usage, std::string("role ") + role_name(p.role) + " does not match " + what);
}

Mat64 phi_matrix(const PhiPoint& ph, const Vec4& x) {
  const double p1 = ph[0], p2 = ph[1], p3 = ph[2];
  auto c = [](double a) { return std::cos(a); };
  auto s = [](double a) { return std::sin(a); };
  const cd x0 = x[0], x1 = x[1], x2 = x[2], x3 = x[3];
  Mat64 m;
  m[0] = {-c(p1) * x1, c(p1) * x0, -I * s(p2 - p3) * x3, -I * s(p2 - p3) * x2};
  m[1] = {-c(p2) * x2, I * s(p1 - p3) * x3, c(p2) * x0, I * s(p1 - p3) * x1};
  m[2] = {-c(p3) * x3, -I * s(p1 - p2) * x2, -I * s(p1 - p2) * x1, c(p3) * x0};
  m[3] = {I * s(p3) * x3, -c(p1 - p2) * x2, c(p1 - p2) * x1, I * s(p3) * x0};
  m[4] = {I * s(p1) * x1, I * s(p1) * x0, -c(p2 - p3) * x3, c(p2 - p3) * x2};
  m[5] = {I * s(p2) * x2, c(p1 - p3) * x3, I * s(p2) * x0, -c(p1 - p3) * x1};
  return m;
}

// an infinite parameter divides its row, leaving only the parameter terms
Vec4 skly_row(const CExt& a, cd lead, cd mid, cd p2, cd p3, int lead_col, int mid_col,
              int c2, int c3) {
  Vec4 r{};
  if (a.inf) {
    r[c2] = p2;
    r[c3] = p3;
    return r;
  }
  r[lead_col] = lead;
  r[mid_col] = mid;
  r[c2] = a.v * p2;
  r[c3] = a.v * p3;
  return r;
}

Mat64 skly_matrix(const SklyaninParams& s, const Vec4& z) {
  const cd z0 = z[0], z1 = z[1], z2 = z[2], z3 = z[3];
  Mat64 m;
  m[0] = skly_row(s.alpha, z1, -z0, z3, z2, 0, 1, 2, 3);
  m[1] = skly_row(s.beta, z2, -z0, z3, z1, 0, 2, 1, 3);
  m[2] = skly_row(s.gamma, z3, -z0, z2, z1, 0, 3, 1, 2);
  m[3] = {z3, z2, -z1, z0};
  m[4] = {z1, z0, z3, -z2};
  m[5] = {z2, -z3, z0, z1};
  return m;
}

Mat64 n_matrix(const ResolventTriple& t, const Vec4& Z) {
  const cd a = t.a, b = t.b, c = t.c;
  const cd Z0 = Z[0], Z1 = Z[1], Z2 = Z[2], Z3 = Z[3];
  Mat64 m;
  m[0] = {Z1, -Z0, Z3, Z2};
  m[1] = {Z2, Z3, -Z0, Z1};
  m[2] = {Z3, Z2, Z1, -Z0};
  m[3] = {(b - c) * Z1, (b - c) * Z0, -a * Z3, a * Z2};
  m[4] = {(c - a) * Z2, b * Z3, (c - a) * Z0, -b * Z1};
  m[5] = {(a - b) * Z3, -c * Z2, c * Z1, (a - b) * Z0};
  return m;
}

Mat64 matrix_of(const RelSource& src, const Vec4& v) {
  if (auto* p = std::get_if<PhiPoint>(&src)) return phi_matrix(*p, v);
  if (auto* s = std::get_if<SklyaninParams>(&src)) return skly_matrix(*s, v);
  return n_matrix(std::get<ResolventTriple>(src), v);
}

}  // namespace

Mat64 relation_matrix(const RelSource& src, const ProjPoint& p) {
  if (std::holds_alternative<PhiPoint>(src))
    require_role(p, {Role::x}, "the trigonometric relation matrix (needs x)");
  else
    require_role(p, {Role::Z, Role::Y}, "the Sklyanin / resolvent matrix (needs Z or Y)");
  return matrix_of(src, p.c);
}

const std::array<std::array<int, 2>, 15> kMinorPairs = {{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6},
                                                         {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 4},
                                                         {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}}};

std::array<cd, 15> minors15(const Mat64& m) {
  std::array<cd, 15> out;
  for (int k = 0; k < 15; ++k) {
    Mat4 sub;
    int n = 0;
    for (int r = 0; r < 6; ++r)
      if (r + 1 != kMinorPairs[k][0] && r + 1 != kMinorPairs[k][1]) sub[n++] = m[r];
    out[k] = det4(sub);
  }
  return out;
}

std::array<cd, 15> appendix_minors(const PhiPoint& ph, const Vec4& x) {
  const double p1 = ph[0], p2 = ph[1], p3 = ph[2];
  auto c = [](double a) { return std::cos(a); };
  auto s = [](double a) { return std::sin(a); };
  const cd x0 = x[0], x1 = x[1], x2 = x[2], x3 = x[3];
  cd A = x0 * x0, B = 0;
  for (int k = 0; k < 3; ++k) {
    A += std::cos(2 * ph[k]) * x[k + 1] * x[k + 1];
    B += std::sin(2 * ph[k]) * x[k + 1] * x[k + 1];
  }
  cd K1 = 2 * s(p1) * s(p2) * s(p3) * A - (c(p1 - p2) * c(p3) + s(p1 + p2) * s(p3)) * B;
  cd K2 = 2 * s(p1) * c(p2) * c(p3) * A - (c(p1) * c(p2 - p3) - s(p1) * s(p2 + p3)) * B;
  cd K3 = 2 * c(p3) * c(p1) * s(p2) * A - (c(p3 - p1) * c(p2) - s(p3 + p1) * s(p2)) * B;
  cd K4 = 2 * c(p1) * c(p2) * s(p3) * A - (c(p1 - p2) * c(p3) - s(p1 + p2) * s(p3)) * B;
  // the three minors without a K factor share this shape
  auto pairf = [&](int j, int k) {
    cd xj = x[j + 1] * x[j + 1], xk = x[k + 1] * x[k + 1];
    return (std::sin(2 * ph[j]) * xj + std::sin(2 * ph[k]) * xk) * A -
           (std::cos(2 * ph[j]) * xj + std::cos(2 * ph[k]) * xk) * B;
  };
  return {(s(p1 - p2) * x1 * x2 + I * c(p3) * x0 * x3) * K1,
          I * (c(p2) * x0 * x2 + I * s(p1 - p3) * x1 * x3) * K1,
          (s(p2) * x0 * x2 + I * c(p1 - p3) * x1 * x3) * K2,
          I * c(p1 - p2 - p3) * pairf(1, 2),
          -(-I * c(p1 - p2) * x1 * x2 + s(p3) * x0 * x3) * K2,
          (I * c(p1) * x0 * x1 + s(p2 - p3) * x2 * x3) * K1,
          (s(p1) * x0 * x1 - I * c(p2 - p3) * x2 * x3) * K3,
          I * (c(p1 - p2) * x1 * x2 - I * s(p3) * x0 * x3) * K3,
          I * c(p1 - p2 + p3) * pairf(0, 2),
          -I * c(p1 + p2 - p3) * pairf(0, 1),
          -I * (I * s(p2) * x0 * x2 + c(p1 - p3) * x1 * x3) * K4,
          (s(p1) * x0 * x1 + I * c(p2 - p3) * x2 * x3) * K4,
          -I * (c(p2) * x0 * x2 - I * s(p1 - p3) * x1 * x3) * K3,
          (-I * c(p1) * x0 * x1 + s(p2 - p3) * x2 * x3) * K2,
          (s(p1 - p2) * x1 * x2 - I * c(p3) * x0 * x3) * K4};
}

cd sklyanin_first_minor(const SklyaninParams& s, const Vec4& z) {
  cd q = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
  return -2.0 * (s.gamma.v * z[1] * z[2] - z[0] * z[3]) * q;
}

double max_entry(const Mat64& m) {
  double r = 0;
  for (auto& row : m) r = std::max(r, sup_norm(row));
  return r;
}

double variety_defect(const RelSource& src, const ProjPoint& p) {
  ProjPoint q = p.normalized();
  Mat64 m = relation_matrix(src, q);
  double e = max_entry(m);
  if (e == 0) return 0;
  double mx = 0;
  for (cd v : minors15(m)) mx = std::max(mx, std::abs(v));
  return mx / (e * e * e * e);
}

bool is_on_variety(const RelSource& src, const ProjPoint& p, double tol) {
  return variety_defect(src, p) < tol;
}

ProjPoint sigma_cubic(const ProjPoint& Z) {
  ProjPoint q = Z.normalized();
  Vec4 out;
  for (int mu = 0; mu < 4; ++mu) {
    cd sq = 0, pr = 1;
    for (int n = 0; n < 4; ++n)
      if (n != mu) {
        sq += q.c[n] * q.c[n];
        pr *= q.c[n];
      }
    double e = (mu == 0) ? 1.0 : -1.0;
    out[mu] = e * (q.c[mu] * q.c[mu] * q.c[mu] - q.c[mu] * sq - 2.0 * pr);
  }
  if (sup_norm(out) < 1e-13) throw Error(ErrKind::Degenerate, "cubic map vanishes at this point");
  return ProjPoint(out, Z.role);
}

ProjPoint sigma_forward(const RelSource& src, const ProjPoint& p) {
  ProjPoint q = p.normalized();
  Vec4 v = null_vector(relation_matrix(src, q));
  if (sup_norm(v) < 1e-13) throw Error(ErrKind::Degenerate, "relation matrix has rank below 3");
  return ProjPoint(v, p.role);
}

ProjPoint sigma_backward(const RelSource& src, const ProjPoint& p) {
  ProjPoint q = p.normalized();
  // B(x)_{i mu} = sum_nu R(e_mu)_{i nu} x_nu
  Mat64 B{};
  for (int mu = 0; mu < 4; ++mu) {
    Vec4 e{};
    e[mu] = 1;
    Mat64 R = matrix_of(src, e);
    for (int i = 0; i < 6; ++i)
      for (int nu = 0; nu < 4; ++nu) B[i][mu] += R[i][nu] * q.c[nu];
  }
  Vec4 v = null_vector(B);
  if (sup_norm(v) < 1e-13) throw Error(ErrKind::Degenerate, "transposed relation matrix has rank below 3");
  return ProjPoint(v, p.role);
}

ProjPoint sigma_sklyanin(const SklyaninParams& s, const ProjPoint& zp) {
  if (s.alpha.inf || s.beta.inf || s.gamma.inf)
    throw Error(ErrKind::Usage, "closed-form translation needs finite parameters");
  ProjPoint q = zp.normalized();
  const cd a = s.alpha.v, b = s.beta.v, g = s.gamma.v;
  const cd z0 = q[0], z1 = q[1], z2 = q[2], z3 = q[3];
  const cd s0 = z0 * z0, s1 = z1 * z1, s2 = z2 * z2, s3 = z3 * z3;
  Vec4 o = {-2.0 * a * b * g * z1 * z2 * z3 - z0 * (-s0 + b * g * s1 + a * g * s2 + a * b * s3),
            2.0 * a * z0 * z2 * z3 + z1 * (s0 - b * g * s1 + a * g * s2 + a * b * s3),
            2.0 * b * z0 * z1 * z3 + z2 * (s0 + b * g * s1 - a * g * s2 + a * b * s3),
            2.0 * g * z0 * z1 * z2 + z3 * (s0 + b * g * s1 + a * g * s2 - a * b * s3)};
  if (sup_norm(o) < 1e-13) throw Error(ErrKind::Degenerate, "translation formula vanishes");
  return ProjPoint(o, zp.role);
}

Vec4 apply_M(const Vec4& v) {
  return {0.5 * (v[0] + v[1] + v[2] + v[3]), 0.5 * (v[0] + v[1] - v[2] - v[3]),
          0.5 * (v[0] - v[1] + v[2] - v[3]), 0.5 * (v[0] - v[1] - v[2] + v[3])};
}

ProjPoint involution(Involution k, const ProjPoint& p) {
  ProjPoint q = p.normalized();
  switch (k) {
    case Involution::Mhalf: {
      Role r = (p.role == Role::u) ? Role::Z : (p.role == Role::Z ? Role::u : p.role);
      return ProjPoint(apply_M(q.c), r);
    }
    case Involution::I: {
      // u -> u^{-1} written as the cubic u_mu -> prod_{nu != mu} u_nu
      Vec4 u = (p.role == Role::u) ? q.c : apply_M(q.c);
      int zeros = 0;
      double su = sup_norm(u);
      for (auto& x : u)
        if (std::abs(x) < 1e-12 * su) ++zeros;
      if (zeros >= 2) throw Error(ErrKind::Singular, "inversion undefined on the lines u_mu = u_nu = 0");
      Vec4 w;
      for (int mu = 0; mu < 4; ++mu) {
        w[mu] = 1;
        for (int n = 0; n < 4; ++n)
          if (n != mu) w[mu] *= u[n];
      }
      return ProjPoint(p.role == Role::u ? w : apply_M(w), p.role);
    }
    default: {
      int idx = int(k) - int(Involution::I0);
      Vec4 w = q.c;
      w[idx] = -w[idx];
      return ProjPoint(w, p.role);
    }
  }
}

double QuadraticForm::asymmetry() const {
  double r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(m[i][j] - m[j][i]));
  return r;
}

QuadraticForm diag_form(const Vec4& d, QLabel l, int idx) {
  QuadraticForm Q;
  for (int i = 0; i < 4; ++i) Q.m[i][i] = d[i];
  Q.label = l;
  Q.index = idx;
  return Q;
}

QuadraticForm form_Q1_sphere() { return diag_form({1, 1, 1, 1}, QLabel::Q1_sphere); }

QuadraticForm form_Q2(const PhiPoint& p) {
  Vec4 d{};
  d[0] = 0;
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    d[k + 1] = 0.5 * std::sin(2 * p[k]) * std::cos(-p[k] + p[l] + p[m]);
  }
  return diag_form(d, QLabel::Q2);
}

QuadraticForm form_Qm(int m, const std::array<cd, 3>& J) {
  // Q_m = J_kl (Y0^2 + Y_m^2) + Y_k^2 - Y_l^2 with (m,k,l) cyclic
  if (m < 1 || m > 3) throw Error(ErrKind::Usage, "Q_m needs m in 1..3");
  int k = m % 3 + 1, l = k % 3 + 1;
  // J stored as (J23, J31, J12); J_kl is the entry indexed by m
  cd Jkl = J[m - 1];
  Vec4 d{};
  d[0] = Jkl;
  d[m] = Jkl;
  d[k] = 1;
  d[l] = -1;
  return diag_form(d, QLabel::Qm, m);
}

QuadraticForm form_Q(const PhiPoint& p) {
  const double p1 = p[0], p2 = p[1], p3 = p[2];
  auto c = [](double a) { return std::cos(a); };
  auto s = [](double a) { return std::sin(a); };
  return diag_form({s(p1 - p2) * s(p2 - p3) * s(p3 - p1), -c(p2) * c(p3) * s(p2 - p3),
                    -c(p3) * c(p1) * s(p3 - p1), -c(p1) * c(p2) * s(p1 - p2)},
                   QLabel::Q_YZ);
}

QuadraticForm form_P(const PhiPoint& p) {
  Vec4 d{};
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    d[k + 1] = std::sin(p[k]) * std::sin(p[l] - p[m]) * std::cos(p[k] - p[l] - p[m]);
  }
  return diag_form(d, QLabel::P);
}

namespace {

std::array<cd, 3> Jc(const PhiPoint& p) {
  auto J = J_values(p);
  return {J[0], J[1], J[2]};
}

double s_scale(const PhiPoint& p) {
  auto s = s_values(p);
  return -s[1] * std::sin(p[0]) * std::sin(p[1]) * std::sin(p[2]);
}

}  // namespace

QuadraticForm form_Pprime(const PhiPoint& p) {
  auto J = Jc(p);
  auto q1 = form_Qm(1, J), q3 = form_Qm(3, J);
  double sc = s_scale(p);
  Vec4 d;
  for (int i = 0; i < 4; ++i) d[i] = (q1.m[i][i] + q3.m[i][i]) / sc;
  return diag_form(d, QLabel::Pprime);
}

QuadraticForm form_Qprime(const PhiPoint& p) {
  auto J = Jc(p);
  auto s = s_values(p);
  auto q1 = form_Qm(1, J), q2 = form_Qm(2, J), q3 = form_Qm(3, J);
  double sc = s_scale(p);
  Vec4 d;
  for (int i = 0; i < 4; ++i) d[i] = (q1.m[i][i] + q3.m[i][i] + s[1] * q2.m[i][i]) / sc;
  return diag_form(d, QLabel::Qprime);
}

cd quadratic_form_eval(const QuadraticForm& Q, const ProjPoint& Z, const ProjPoint& Zp) {
  if (Z.role != Zp.role) throw Error(ErrKind::Usage, "bilinear form evaluated on mixed roles");
  cd r = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r += Z.c[i] * Q.m[i][j] * Zp.c[j];
  return r;
}

int stacked_rank(const std::vector<QuadraticForm>& forms, double tol) {
  // rows = flattened matrices, Gaussian elimination with partial pivoting
  std::vector<std::array<cd, 16>> rows;
  for (auto& f : forms) {
    std::array<cd, 16> r;
    for (int i = 0; i < 16; ++i) r[i] = f.m[i / 4][i % 4];
    rows.push_back(r);
  }
  double scale = 0;
  for (auto& r : rows)
    for (auto& v : r) scale = std::max(scale, std::abs(v));
  if (scale == 0) return 0;
  int rank = 0;
  for (int col = 0; col < 16 && rank < int(rows.size()); ++col) {
    int piv = -1;
    double best = tol * scale;
    for (int r = rank; r < int(rows.size()); ++r)
      if (std::abs(rows[r][col]) > best) {
        best = std::abs(rows[r][col]);
        piv = r;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < int(rows.size()); ++r) {
      cd f = rows[r][col] / rows[rank][col];
      for (int c = 0; c < 16; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

namespace {

std::array<cd, 6> omega(const RelSource& src, const ProjPoint& a, const ProjPoint& b) {
  Mat64 R = matrix_of(src, a.c);
  std::array<cd, 6> w{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 4; ++j) w[i] += R[i][j] * b.c[j];
  return w;
}

bool uses_cubic(const RelSource& src) { return std::holds_alternative<ResolventTriple>(src); }

}  // namespace

CentralityResult centrality_residual(const QuadraticForm& Q, const RelSource& src,
                                     const ProjPoint& Z0, const ProjPoint& Zp0) {
  ProjPoint Z = Z0.normalized(), Zp = Zp0.normalized();
  ProjPoint sZp, siZ;
  if (uses_cubic(src)) {
    // sigma^{-1} = I0 o sigma o I0
    sZp = sigma_cubic(Zp).normalized();
    siZ = involution(Involution::I0, sigma_cubic(involution(Involution::I0, Z))).normalized();
  } else {
    sZp = sigma_forward(src, Zp).normalized();
    siZ = sigma_backward(src, Z).normalized();
  }
  auto w1 = omega(src, Z, Zp), w2 = omega(src, sZp, siZ);
  cd q1 = quadratic_form_eval(Q, sZp, siZ), q2 = quadratic_form_eval(Q, Z, Zp);
  CentralityResult res;
  double qs = 0;
  for (int i = 0; i < 4; ++i) qs = std::max(qs, std::abs(Q.m[i][i]));
  res.degenerate = std::abs(q1) < 1e-12 * qs && std::abs(q2) < 1e-12 * qs;
  double scale = 0, r = 0;
  for (int i = 0; i < 6; ++i) {
    r = std::max(r, std::abs(w1[i] * q1 + q2 * w2[i]));
    scale = std::max({scale, std::abs(w1[i] * q1), std::abs(q2 * w2[i])});
  }
  // relative to the size of the individual terms, with an absolute floor
  res.residual = r / std::max(scale, 1e-300 + qs);
  return res;
}

std::array<cd, 4> rho_xtoY(const PhiPoint& phi) {
  auto Q = form_Q(phi);
  std::array<cd, 4> r;
  for (int i = 0; i < 4; ++i) r[i] = std::sqrt(Q.m[i][i]);
  return r;
}

ProjPoint change_basis(Basis dir, const ProjPoint& p, const PhiPoint& phi) {
  switch (dir) {
    case Basis::Z_of_u:
    case Basis::u_of_Z: {
      Role r = (dir == Basis::Z_of_u) ? Role::Z : Role::u;
      return ProjPoint(apply_M(p.c), r);
    }
    case Basis::x_to_Y: {
      auto rho = rho_xtoY(phi);
      Vec4 Y;
      for (int i = 0; i < 4; ++i) {
        if (std::abs(rho[i]) < 1e-13) throw Error(ErrKind::Branch, "x -> Y scale factor vanishes");
        Y[i] = p.c[i] / rho[i];
      }
      return ProjPoint(Y, Role::Y);
    }
    case Basis::y_to_Y: {
      Vec4 u;
      u[0] = 1;
      for (int k = 0; k < 3; ++k) u[k + 1] = std::exp(2.0 * I * phi[k]);
      auto sq = [](cd v) {
        if (std::abs(v) < 1e-12) throw Error(ErrKind::Branch, "vanishing radicand in y -> Y");
        return std::sqrt(v);
      };
      Vec4 f = {sq(u[1] - u[2]) * sq(u[2] - u[3]) * sq(u[3] - u[1]),
                sq(u[0] + u[2]) * sq(u[2] - u[3]) * sq(u[0] + u[3]),
                sq(u[0] + u[3]) * sq(u[3] - u[1]) * sq(u[0] + u[1]),
                sq(u[0] + u[1]) * sq(u[1] - u[2]) * sq(u[0] + u[2])};
      Vec4 Y;
      for (int i = 0; i < 4; ++i) Y[i] = p.c[i] / f[i];
      return ProjPoint(Y, Role::Y);
    }
  }
  throw Error(ErrKind::Usage, "unknown basis change");
}

}  // namespace ncs
