#include "ncs/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace ncs {

std::array<cd, 2> lambda_p(const ResolventTriple& t) {
  const cd a = t.a, b = t.b, c = t.c;
  double sc = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (std::abs(a) < 1e-12 * sc || std::abs(b) < 1e-12 * sc || std::abs(c) < 1e-12 * sc ||
      std::abs(a - b) < 1e-12 * sc || std::abs(b - c) < 1e-12 * sc || std::abs(c - a) < 1e-12 * sc)
    throw Error(ErrKind::Degenerate, "resolvent roots coincide or vanish, fiber is singular");
  return {(a / b) * (c - b) / (c - a), a / (a - c)};
}

std::array<cd, 3> sigma_vector(const EllipticTriple& T) {
  Theta4 t0 = theta_all(0.0, T.M), te = theta_all(T.eta, T.M);
  return {t0[2] * t0[2] / (te[2] * te[2]), t0[3] * t0[3] / (te[3] * te[3]),
          t0[4] * t0[4] / (te[4] * te[4])};
}

double proportionality_residual(const ResolventTriple& t, const std::array<cd, 3>& v) {
  // cross-ratios of the two triples
  cd r = v[0] / t.a;
  double sc = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
  return std::max(std::abs(r * t.b - v[1]), std::abs(r * t.c - v[2])) / sc;
}

namespace {

cd p_ratio_dz(cd z, const ModularParam& M) {
  Theta4 t0 = theta_all(0.0, M), t = theta_all(z, M), d = theta_all(z, M, 1);
  cd k = t0[2] * t0[2] / (t0[3] * t0[3]);
  cd t1 = t[1], t4 = t[4];
  return k * 2.0 * t4 * (d[4] * t1 - t4 * d[1]) / (t1 * t1 * t1);
}

// lattice coordinates z = x + y tau, both reduced into [0,1)
cd reduce_cell(cd z, cd tau) {
  double y = z.imag() / tau.imag();
  double x = z.real() - y * tau.real();
  x -= std::floor(x);
  y -= std::floor(y);
  if (x > 1 - 1e-13) x = 0;
  if (y > 1 - 1e-13) y = 0;
  return x + y * tau;
}

cd solve_eta(cd p, const ModularParam& M) {
  auto f = [&](cd e) { return p_ratio(e, M) - p; };
  // real regime: p real and tau on the imaginary axis, p_ratio is monotone on (0, 1/2)
  if (std::abs(M.tau.real()) < 1e-14 && std::abs(p.imag()) < 1e-14 * std::max(1.0, std::abs(p))) {
    double lo = 1e-6, hi = 0.5;
    double flo = f(lo).real(), fhi = f(hi).real();
    if (flo * fhi < 0) {
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid).real();
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else
          hi = mid;
      }
      // polish with Newton in the complex plane, stays real
      cd e = 0.5 * (lo + hi);
      for (int it = 0; it < 3; ++it) {
        cd d = p_ratio_dz(e, M);
        if (std::abs(d) == 0) break;
        e -= f(e) / d;
      }
      return cd(e.real(), 0.0);
    }
  }
  const int G = 8;
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j) {
      cd e = (i + 0.5) / G + ((j + 0.5) / G) * M.tau;
      for (int it = 0; it < 80; ++it) {
        cd d = p_ratio_dz(e, M);
        if (!std::isfinite(std::abs(d)) || std::abs(d) == 0) break;
        cd st = f(e) / d;
        // damp long jumps
        if (std::abs(st) > 0.25) st *= 0.25 / std::abs(st);
        e -= st;
        if (std::abs(st) < 1e-15 * std::max(1.0, std::abs(e))) break;
      }
      if (std::isfinite(std::abs(e)) && std::abs(f(e)) < 1e-10 * std::max(1.0, std::abs(p)))
        return reduce_cell(e, M.tau);
    }
  throw Error(ErrKind::Numeric, "no eta solving the p-equation found from the seed grid");
}

bool sigma_is_minus_eta(const EllipticTriple& T) {
  cd z0(0.1713, 0.0731 * T.M.tau.imag());
  ProjPoint a = sigma_cubic(psi(z0, T));
  ProjPoint b = psi(z0 - T.eta, T);
  return projective_equal(a, b, 1e-8);
}

}  // namespace

EllipticTriple elliptic_triple(const ResolventTriple& t, double eps) {
  auto lp = lambda_p(t);
  EllipticTriple T;
  T.abc = t;
  T.M = tau_of_lambda(lp[0], eps);
  T.eta = solve_eta(lp[1], T.M);
  T.omega = {0.5, 0.5 * (1.0 + T.M.tau), 0.5 * T.M.tau};
  if (!sigma_is_minus_eta(T)) {
    T.eta = reduce_cell(-T.eta, T.M.tau);
    T.flipped = true;
    if (!sigma_is_minus_eta(T))
      throw Error(ErrKind::Numeric, "neither eta nor -eta makes the cubic map a translation");
  }
  auto v = sigma_vector(T);
  T.lam = v[0] / t.a;
  T.prop_residual = proportionality_residual(t, v);
  if (T.prop_residual > 1e-8)
    throw Error(ErrKind::Numeric, "elliptic parameters fail the proportionality check");
  return T;
}

EllipticTriple elliptic_triple(const PhiPoint& p, double eps) {
  return elliptic_triple(resolvent_of_phi(p), eps);
}

bool is_even_generic(const PhiPoint& p) {
  if (classify(p).case_id != CaseId::Generic) return false;
  for (int k = 0; k < 3; ++k)
    if (!(p[k] > 0 && p[k] < PI / 2)) return false;
  return true;
}

PhiPoint even_frame(const PhiPoint& p) {
  if (!is_even_generic(p))
    throw Error(ErrKind::Classification, "needs a generic phi with all angles in (0, pi/2)");
  std::array<double, 3> a = p.phi;
  std::sort(a.begin(), a.end());
  return PhiPoint(a[0], a[1], a[2]);
}

Vec4 psi_raw(cd z, const EllipticTriple& T) {
  Theta4 t = theta_all(2.0 * z - T.eta, T.M), te = theta_all(T.eta, T.M);
  return {t[1] / te[1], t[2] / te[2], t[3] / te[3], t[4] / te[4]};
}

Vec4 psi_dz(cd z, const EllipticTriple& T) {
  Theta4 d = theta_all(2.0 * z - T.eta, T.M, 1), te = theta_all(T.eta, T.M);
  return {2.0 * d[1] / te[1], 2.0 * d[2] / te[2], 2.0 * d[3] / te[3], 2.0 * d[4] / te[4]};
}

ProjPoint psi(cd z, const EllipticTriple& T) { return ProjPoint(psi_raw(z, T), Role::Z); }

ProjPoint phiz(cd z, const EllipticTriple& T) { return psi(z + 0.5 * T.eta, T); }

double fiber_residual(const ProjPoint& Z, const ResolventTriple& t) {
  ProjPoint q = Z.normalized();
  cd d1 = q[0] * q[0] - q[1] * q[1], d2 = q[0] * q[0] - q[2] * q[2], d3 = q[0] * q[0] - q[3] * q[3];
  double sc = std::max({std::abs(t.a), std::abs(t.b), std::abs(t.c)});
  return std::max(std::abs(d1 * t.b - d2 * t.a), std::abs(d1 * t.c - d3 * t.a)) / sc;
}

ProjPoint special_point(const std::string& name) {
  if (name.size() != 2 || (name[0] != 'p' && name[0] != 'q') || name[1] < '0' || name[1] > '3')
    throw Error(ErrKind::Usage, "special point must be one of p0..p3, q0..q3");
  int k = name[1] - '0';
  Vec4 v;
  if (name[0] == 'p') {
    v = {0, 0, 0, 0};
    v[k] = 1;
  } else {
    v = {1, 1, 1, 1};
    v[k] = -1;
  }
  return ProjPoint(v, Role::u);
}

cd chi_form(int k, const Vec4& Z, const Vec4& dZ, const std::array<double, 3>& s) {
  int l = k % 3 + 1, m = l % 3 + 1;
  return (Z[k] * dZ[0] - Z[0] * dZ[k]) / (s[k - 1] * Z[l] * Z[m]);
}

JacobianData period_Omega(const PhiPoint& phi, const EllipticTriple& T, int nodes) {
  if (!is_even_generic(phi)) throw Error(ErrKind::Classification, "period needs a generic even phi");
  JacobianData J;
  J.k_index = 1;
  J.t_k = std::tan(phi[0]);
  J.c_k = std::tan(phi[1]) / std::tan(phi[0] - phi[1]);
  J.nodes = nodes;
  // k = 1: the denominator Z2 Z3 has no zero on the real line
  cd sum = 0;
  Theta4 te = theta_all(T.eta, T.M);
  for (int j = 0; j < nodes; ++j) {
    double z = double(j) / nodes;
    Theta4 t = theta_all(2.0 * z, T.M), d = theta_all(2.0 * z, T.M, 1);
    cd Z[4], dZ[4];
    for (int i = 0; i < 4; ++i) {
      Z[i] = t.v[i] / te.v[i];
      dZ[i] = 2.0 * d.v[i] / te.v[i];
    }
    sum += (Z[1] * dZ[0] - Z[0] * dZ[1]) / (Z[2] * Z[3]);
  }
  J.Omega = sum / double(nodes);
  auto s = s_values(phi);
  Theta4 t0 = theta_all(0.0, T.M);
  cd om3 = 2 * PI * t0[4] * t0[4] * te[2] * te[3] / (te[1] * te[4]);
  // the form is s_k chi with chi independent of k
  J.Omega_closed = om3 * s[0] / s[2];
  return J;
}

namespace {

struct RParts {
  double t, c;
};
RParts r_parts(const PhiPoint& phi) {
  return {std::tan(phi[0]), std::tan(phi[1]) / std::tan(phi[0] - phi[1])};
}

}  // namespace

cd jacobian_R(const ProjPoint& Z, const PhiPoint& phi) {
  auto [t, c] = r_parts(phi);
  ProjPoint q = Z.normalized();
  cd den = q[3] * q[3] + c * q[2] * q[2];
  if (std::abs(den) < 1e-13) throw Error(ErrKind::Pole, "R has a pole at this point");
  return t * q[3] * q[3] / den;
}

cd jacobian_J(const ProjPoint& Z, const PhiPoint& phi) {
  auto [t, c] = r_parts(phi);
  auto s = s_values(phi);
  // homogeneous of degree 0 together with chi, so no normalization here
  const Vec4& q = Z.c;
  cd den = q[3] * q[3] + c * q[2] * q[2];
  if (std::abs(den) < 1e-300) throw Error(ErrKind::Pole, "J has a pole at this point");
  return 2.0 * (s[1] - s[2]) * c * t * q[0] * q[1] * q[2] * q[3] / (den * den);
}

Vec4 jacobian_frame(const Vec4& Z, const PhiPoint& phi) {
  auto J = J_values(phi);
  cd J23 = J[0], J31 = J[1];
  return {Z[3], std::sqrt(J31) * Z[2], std::sqrt(-J23) * Z[1], std::sqrt(-J23 * J31) * Z[0]};
}

Vec4 curve_Z(double m, const EllipticTriple& T) {
  Theta4 t = theta_all(cd(0, m), T.M), te = theta_all(T.eta, T.M);
  return {t[1] / te[1], t[2] / te[2], t[3] / te[3], t[4] / te[4]};
}

Vec4 curve_dZ(double m, const EllipticTriple& T) {
  Theta4 d = theta_all(cd(0, m), T.M, 1), te = theta_all(T.eta, T.M);
  return {I * d[1] / te[1], I * d[2] / te[2], I * d[3] / te[3], I * d[4] / te[4]};
}

cd R_of_m(double m, const PhiPoint& phi, const EllipticTriple& T) {
  return jacobian_R(ProjPoint(jacobian_frame(curve_Z(m, T), phi), Role::Y), phi);
}

cd dR_of_m(double m, const PhiPoint& phi, const EllipticTriple& T) {
  auto [t, c] = r_parts(phi);
  Vec4 W = jacobian_frame(curve_Z(m, T), phi), dW = jacobian_frame(curve_dZ(m, T), phi);
  cd A = W[3] * W[3], B = W[2] * W[2];
  cd dA = 2.0 * W[3] * dW[3], dB = 2.0 * W[2] * dW[2];
  cd den = A + c * B;
  return t * c * (dA * B - A * dB) / (den * den);
}

ProjPoint isoel(cd X, cd Y, const std::array<double, 3>& s) {
  Vec4 u;
  u[0] = 1;
  for (int k = 0; k < 3; ++k) {
    cd w = X * s[k] - 1.0;
    if (std::abs(w - I * Y) < 1e-14) throw Error(ErrKind::Pole, "isoel image at infinity");
    u[k + 1] = (w + I * Y) / (w - I * Y);
  }
  return ProjPoint(u, Role::u);
}

DualShift duality_shift(const PhiPoint& phi, int j, double eps) {
  EllipticTriple T = elliptic_triple(phi, eps);
  ResolventTriple s0 = resolvent_of_phi(phi), s1 = resolvent_of_phi(duality(j, phi));
  cd l0 = lambda_p(s0)[0];
  std::array<cd, 3> v{s1.a, s1.b, s1.c};
  std::array<int, 3> p{0, 1, 2};
  DualShift best;
  best.lambda_gap = 1e300;
  do {
    ResolventTriple t{v[p[0]], v[p[1]], v[p[2]]};
    double gap = std::abs(lambda_p(t)[0] - l0);
    if (gap < best.lambda_gap) {
      best.lambda_gap = gap;
      best.perm = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  ResolventTriple t{v[best.perm[0]], v[best.perm[1]], v[best.perm[2]]};
  EllipticTriple T2 = elliptic_triple(t, eps);
  best.tau_gap = std::abs(reduce_gamma2(T2.M.tau) - reduce_gamma2(T.M.tau));
  cd tau = T.M.tau;
  best.residual = 1e300;
  for (int sg : {1, -1}) {
    cd d = 2.0 * (T2.eta - double(sg) * T.eta);
    double b = d.imag() / tau.imag(), a = d.real() - b * tau.real();
    double ra = std::round(a), rb = std::round(b);
    double r = std::abs(d - (ra + rb * tau));
    if (r < best.residual) {
      best.residual = r;
      best.sign = sg;
      // reduce mod L: only parities survive
      best.half = {int(((long)ra % 2 + 2) % 2), int(((long)rb % 2 + 2) % 2)};
    }
  }
  return best;
}

}  // namespace ncs
