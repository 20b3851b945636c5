#include "ncs/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>

namespace ncs {

double reduce_pi(double x) {
  double r = std::fmod(x, PI);
  if (r < 0) r += PI;
  if (r >= PI) r -= PI;
  return r;
}

PhiPoint::PhiPoint(double a, double b, double c) : phi{reduce_pi(a), reduce_pi(b), reduce_pi(c)} {}

std::string Ext::str() const {
  if (kind == Infinite) return "inf";
  if (kind == Indeterminate) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

constexpr double kZeroTol = 1e-12;

Ext ext_tan(double x) {
  double c = std::cos(x);
  if (std::abs(c) < kZeroTol) return Ext::inf();
  return Ext::fin(std::tan(x));
}

Ext ext_mul(Ext a, Ext b) {
  if (a.kind == Ext::Indeterminate || b.kind == Ext::Indeterminate) return Ext::nan();
  if (a.finite() && b.finite()) return Ext::fin(a.v * b.v);
  // inf * 0 has no value
  if (a.finite() && std::abs(a.v) < kZeroTol) return Ext::nan();
  if (b.finite() && std::abs(b.v) < kZeroTol) return Ext::nan();
  return Ext::inf();
}

Ext ext_add1(Ext a) {
  if (!a.finite()) return a;
  return Ext::fin(1.0 + a.v);
}

Ext ext_neg(Ext a) {
  if (!a.finite()) return a;
  return Ext::fin(-a.v);
}

}  // namespace

TrigInvariants trig_invariants(const PhiPoint& p) {
  TrigInvariants T;
  for (int k = 0; k < 3; ++k) T.t[k] = ext_tan(p[k]);
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    T.s[k] = ext_add1(ext_mul(T.t[l], T.t[m]));
    // J_lm = -tan(phi_k) tan(phi_l - phi_m)
    T.J[k] = ext_neg(ext_mul(T.t[k], ext_tan(p[l] - p[m])));
    T.alpha[k] = ext_neg(T.J[k]);
  }
  T.delta = 1;
  Ext L = Ext::fin(1);
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    T.delta *= std::sin(p[k]) * std::cos(p[l] - p[m]);
    L = ext_mul(L, ext_mul(T.t[k], Ext::fin(std::cos(p[l] - p[m]))));
  }
  T.Lambda = L;
  return T;
}

ScaleFactors scale_factors(const PhiPoint& p) {
  TrigInvariants T = trig_invariants(p);
  if (std::abs(T.delta) < 1e-13) throw Error(ErrKind::Degenerate, "delta(phi) = 0, no rescaling");
  ScaleFactors sf;
  double ps = std::sin(p[0]) * std::sin(p[1]) * std::sin(p[2]);
  sf.lambda_mu[0] = std::sqrt(cd(ps));
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    sf.lambda_mu[k + 1] = std::sqrt(cd(std::sin(p[k]) * std::cos(p[k] - p[l]) * std::cos(p[k] - p[m])));
  }
  cd prod = sf.lambda_mu[0] * sf.lambda_mu[1] * sf.lambda_mu[2] * sf.lambda_mu[3];
  if (std::abs(prod + T.delta) > std::abs(prod - T.delta)) sf.lambda_mu[0] = -sf.lambda_mu[0];
  return sf;
}

double scale_factor_residual(const PhiPoint& p, const ScaleFactors& sf) {
  TrigInvariants T = trig_invariants(p);
  const auto& L = sf.lambda_mu;
  double r = std::abs(L[0] * L[1] * L[2] * L[3] + T.delta);
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    r = std::max(r, std::abs(std::sin(p[k]) * L[l + 1] * L[m + 1] +
                             std::cos(p[l] - p[m]) * L[0] * L[k + 1]));
  }
  return r;
}

const char* case_name(CaseId c) {
  switch (c) {
    case CaseId::Generic: return "Generic";
    case CaseId::EvenFace: return "EvenFace";
    case CaseId::OddFace: return "OddFace";
    case CaseId::LineL: return "LineL";
    case CaseId::LineLprime: return "LineLprime";
    case CaseId::LineLsecond: return "LineLsecond";
    case CaseId::Cplus: return "Cplus";
    case CaseId::Cminus: return "Cminus";
    case CaseId::VertexP: return "VertexP";
    case CaseId::VertexPprime: return "VertexPprime";
    case CaseId::VertexO: return "VertexO";
  }
  return "?";
}

int case_number(CaseId c) { return int(c) + 1; }

PhiPoint WeylElement::apply(const PhiPoint& p) const {
  double r[3];
  for (int i = 0; i < 3; ++i) r[i] = A[i][0] * p[0] + A[i][1] * p[1] + A[i][2] * p[2];
  return PhiPoint(r[0], r[1], r[2]);
}

std::string WeylElement::str() const {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    s += "[";
    for (int j = 0; j < 3; ++j) s += std::to_string(A[i][j]) + (j < 2 ? "," : "");
    s += (i < 2) ? "]," : "]";
  }
  return s + "]";
}

const std::vector<WeylElement>& weyl_group() {
  static const std::vector<WeylElement> G = [] {
    using M = std::array<std::array<int, 3>, 3>;
    auto mul = [](const M& a, const M& b) {
      M r{};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
      return r;
    };
    M id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    M s12{{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
    M s23{{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}};
    // phi -> (-phi1, phi3 - phi1, phi2 - phi1)
    M k1{{{-1, 0, 0}, {-1, 0, 1}, {-1, 1, 0}}};
    std::vector<M> gens{s12, s23, k1};
    std::vector<WeylElement> out;
    std::set<M> seen{id};
    std::deque<M> q{id};
    while (!q.empty()) {
      M g = q.front();
      q.pop_front();
      WeylElement w;
      w.A = g;
      w.index = int(out.size());
      out.push_back(w);
      for (auto& h : gens) {
        M n = mul(h, g);
        if (seen.insert(n).second) q.push_back(n);
      }
    }
    return out;
  }();
  return G;
}

namespace {

// distance on R / pi Z
double dpi(double a, double b) {
  double d = reduce_pi(a - b);
  return std::min(d, PI - d);
}

}  // namespace

bool in_A(const PhiPoint& p, bool strict) {
  double e = strict ? 1e-12 : -1e-12;
  return PI / 2 - p[0] > e && p[0] - p[1] > e && p[1] - p[2] > e && p[2] > e;
}

bool in_B(const PhiPoint& p, bool strict) {
  double e = strict ? 1e-12 : -1e-12;
  return p[2] + PI / 2 - p[0] > e && p[0] - PI / 2 > e && PI / 2 - p[1] > e && p[1] - p[2] > e;
}

bool in_normal_form(CaseId c, const PhiPoint& p, double tol) {
  auto eq = [&](double a, double b) { return dpi(a, b) < tol; };
  const double h = PI / 2;
  switch (c) {
    case CaseId::Generic: return in_A(p, true) || in_B(p, true);
    case CaseId::EvenFace: return eq(p[0], p[1]);
    case CaseId::OddFace: return eq(p[0], h);
    case CaseId::LineL: return eq(p[0], h) && eq(p[1], p[2]);
    case CaseId::LineLprime: return eq(p[0], h) && eq(p[1], h);
    case CaseId::LineLsecond: return eq(p[0], p[1]) && eq(p[1], p[2]);
    case CaseId::Cplus: return eq(p[0], p[1]) && eq(p[2], 0);
    case CaseId::Cminus: return eq(p[1], h) && eq(p[0], p[2] + h);
    case CaseId::VertexP: return eq(p[0], h) && eq(p[1], h) && eq(p[2], h);
    case CaseId::VertexPprime: return eq(p[0], h) && eq(p[1], h) && eq(p[2], 0);
    case CaseId::VertexO: return eq(p[0], 0) && eq(p[1], 0) && eq(p[2], 0);
  }
  return false;
}

CaseLabel classify(const PhiPoint& p, double tol) {
  double roots[6] = {p[0], p[1], p[2], p[0] - p[1], p[0] - p[2], p[1] - p[2]};
  int hits = 0, odd = 0;
  for (double r : roots) {
    if (dpi(r, 0) < tol) ++hits;
    else if (dpi(r, PI / 2) < tol) {
      ++hits;
      ++odd;
    }
  }
  CaseLabel L;
  L.hits = hits;
  L.odd_hits = odd;
  int even = hits - odd;
  if (hits == 0) L.case_id = CaseId::Generic;
  else if (hits == 1) L.case_id = odd ? CaseId::OddFace : CaseId::EvenFace;
  else if (hits == 2) {
    if (odd == 0) L.case_id = CaseId::Cplus;
    else if (even == 0) L.case_id = CaseId::Cminus;
    else L.case_id = CaseId::LineL;
  } else if (hits == 3 && odd == 0) L.case_id = CaseId::LineLsecond;
  else if (hits == 3 && odd == 2) L.case_id = CaseId::LineLprime;
  else if (hits == 6 && odd == 0) L.case_id = CaseId::VertexO;
  else if (hits == 6 && odd == 3) L.case_id = CaseId::VertexP;
  else if (hits == 6 && odd == 4) L.case_id = CaseId::VertexPprime;
  else
    throw Error(ErrKind::Numeric, "root pattern matches no stratum (hits=" + std::to_string(hits) +
                                      ", odd=" + std::to_string(odd) + ")");
  for (const auto& w : weyl_group())
    if (in_normal_form(L.case_id, w.apply(p), tol)) {
      L.has_witness = true;
      L.witness = w;
      break;
    }
  return L;
}

std::array<double, 3> flow_field(const PhiPoint& p) {
  std::array<double, 3> F;
  for (int j = 0; j < 3; ++j) {
    int k = (j + 1) % 3, l = (j + 2) % 3;
    F[j] = std::sin(2 * p[j]) * std::sin(p[k] + p[l] - p[j]);
  }
  return F;
}

std::array<double, 3> flow_integrate(std::array<double, 3> y, double t, int steps) {
  auto f = [](const std::array<double, 3>& v) {
    std::array<double, 3> F;
    for (int j = 0; j < 3; ++j) {
      int k = (j + 1) % 3, l = (j + 2) % 3;
      F[j] = std::sin(2 * v[j]) * std::sin(v[k] + v[l] - v[j]);
    }
    return F;
  };
  double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    auto k1 = f(y);
    std::array<double, 3> y2, y3, y4;
    for (int i = 0; i < 3; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
    auto k2 = f(y2);
    for (int i = 0; i < 3; ++i) y3[i] = y[i] + 0.5 * h * k2[i];
    auto k3 = f(y3);
    for (int i = 0; i < 3; ++i) y4[i] = y[i] + h * k3[i];
    auto k4 = f(y4);
    for (int i = 0; i < 3; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

PhiPoint flow_integrate(const PhiPoint& p, double t, int steps) {
  auto y = flow_integrate(p.phi, t, steps);
  return PhiPoint(y[0], y[1], y[2]);
}

double s_scaling_residual(const PhiPoint& p) {
  auto F = flow_field(p);
  auto s = s_values(p);
  double t[3], sec2[3];
  for (int j = 0; j < 3; ++j) {
    t[j] = std::tan(p[j]);
    sec2[j] = 1 + t[j] * t[j];
  }
  double want = 4 * std::sin(p[0]) * std::sin(p[1]) * std::sin(p[2]);
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    double ds = sec2[l] * t[m] * F[l] + t[l] * sec2[m] * F[m];
    worst = std::max(worst, std::abs(ds / s[k] - want));
  }
  return worst;
}

double J_drift(const PhiPoint& p, double t, int steps) {
  auto J0 = J_values(p);
  auto y = flow_integrate(p.phi, t, steps);
  auto J1 = J_values(PhiPoint(y[0], y[1], y[2]));
  double worst = 0;
  for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(J1[k] - J0[k]) / std::max(1.0, std::abs(J0[k])));
  return worst;
}

PhiPoint duality(int j, const PhiPoint& p) {
  const double h = PI / 2;
  double a = p[0], b = p[1], c = p[2];
  switch (j) {
    case 1: return PhiPoint(PI - a, h - a + b, h - a + c);
    case 2: return PhiPoint(h + b - c, b, h - a + b);
    case 3: return PhiPoint(h - b + c, h - a + c, c);
  }
  throw Error(ErrKind::Usage, "duality index must be 1, 2 or 3");
}

ResolventResult resolvent(const ProjPoint& u) {
  const auto& v = u.c;
  ResolventResult R;
  R.abc.a = (v[0] + v[1]) * (v[2] + v[3]);
  R.abc.b = (v[0] + v[2]) * (v[3] + v[1]);
  R.abc.c = (v[0] + v[3]) * (v[1] + v[2]);
  double sc = u.sup() * u.sup();
  const cd a = R.abc.a, b = R.abc.b, c = R.abc.c;
  if (std::abs(a) < 1e-12 * sc || std::abs(b) < 1e-12 * sc || std::abs(c) < 1e-12 * sc)
    throw Error(ErrKind::Singular, "u lies in the 8-point base locus");
  R.J = {(b - c) / a, (c - a) / b, (a - b) / c};
  return R;
}

std::array<double, 3> s_values(const PhiPoint& p) {
  TrigInvariants T = trig_invariants(p);
  std::array<double, 3> s;
  for (int k = 0; k < 3; ++k) {
    if (!T.s[k].finite()) throw Error(ErrKind::Classification, "s_k infinite at this phi");
    s[k] = T.s[k].v;
  }
  return s;
}

std::array<double, 3> J_values(const PhiPoint& p) {
  TrigInvariants T = trig_invariants(p);
  std::array<double, 3> J;
  for (int k = 0; k < 3; ++k) {
    if (!T.J[k].finite()) throw Error(ErrKind::Classification, "J infinite at this phi");
    J[k] = T.J[k].v;
  }
  return J;
}

ResolventTriple resolvent_of_phi(const PhiPoint& p) {
  auto s = s_values(p);
  return {s[0], s[1], s[2]};
}

std::array<double, 3> rho_map(const std::array<double, 3>& s) {
  std::array<double, 3> r;
  for (int k = 0; k < 3; ++k) r[k] = (s[(k + 1) % 3] - s[(k + 2) % 3]) / s[k];
  return r;
}

std::array<double, 3> s_tilde(const std::array<double, 3>& s) {
  std::array<double, 3> r;
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    r[k] = (-s[k] + s[l] + s[m]) / (s[l] * s[m]);
  }
  return r;
}

}  // namespace ncs
