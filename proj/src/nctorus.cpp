#include "ncs/nctorus.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace ncs {

namespace {

const double NaN = std::numeric_limits<double>::quiet_NaN();

class ConstNode : public CoeffNode {
 public:
  explicit ConstNode(cd c) : c_(c) {}
  Jet eval(cd) const override { return {c_, 0, 0}; }

 private:
  cd c_;
};

struct Key {
  std::uint64_t a, b;
  bool operator==(const Key& o) const { return a == o.a && b == o.b; }
};
struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.a * 0x9E3779B97F4A7C15ULL ^ (k.b + (k.a << 6)); }
};

class LeafNode : public CoeffNode {
 public:
  explicit LeafNode(std::function<Jet(cd)> f) : f_(std::move(f)) {}
  Jet eval(cd u) const override {
    double re = u.real(), im = u.imag();
    Key k{};
    std::memcpy(&k.a, &re, 8);
    std::memcpy(&k.b, &im, 8);
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = cache_.find(k);
      if (it != cache_.end()) return it->second;
    }
    Jet j = f_(u);
    std::lock_guard<std::mutex> g(mu_);
    if (cache_.size() < 200000) cache_.emplace(k, j);
    return j;
  }

 private:
  std::function<Jet(cd)> f_;
  mutable std::mutex mu_;
  mutable std::unordered_map<Key, Jet, KeyHash> cache_;
};

class AddNode : public CoeffNode {
 public:
  AddNode(CoeffFn a, CoeffFn b) : a_(std::move(a)), b_(std::move(b)) {}
  Jet eval(cd u) const override {
    Jet x = a_->eval(u), y = b_->eval(u);
    return {x.v + y.v, x.du + y.du, x.dm + y.dm};
  }

 private:
  CoeffFn a_, b_;
};

class MulNode : public CoeffNode {
 public:
  MulNode(CoeffFn a, CoeffFn b) : a_(std::move(a)), b_(std::move(b)) {}
  Jet eval(cd u) const override {
    Jet x = a_->eval(u), y = b_->eval(u);
    return {x.v * y.v, x.du * y.v + x.v * y.du, x.dm * y.v + x.v * y.dm};
  }

 private:
  CoeffFn a_, b_;
};

class ScaleNode : public CoeffNode {
 public:
  ScaleNode(CoeffFn a, cd c) : a_(std::move(a)), c_(c) {}
  Jet eval(cd u) const override {
    Jet x = a_->eval(u);
    return {c_ * x.v, c_ * x.du, c_ * x.dm};
  }

 private:
  CoeffFn a_;
  cd c_;
};

class ShiftNode : public CoeffNode {
 public:
  ShiftNode(CoeffFn a, cd s) : a_(std::move(a)), s_(s) {}
  Jet eval(cd u) const override { return a_->eval(u + s_); }

 private:
  CoeffFn a_;
  cd s_;
};

// m is real, so the m-channel conjugates along with the value
class ConjNode : public CoeffNode {
 public:
  explicit ConjNode(CoeffFn a) : a_(std::move(a)) {}
  Jet eval(cd u) const override {
    Jet x = a_->eval(std::conj(u));
    return {std::conj(x.v), std::conj(x.du), std::conj(x.dm)};
  }

 private:
  CoeffFn a_;
};

class DuNode : public CoeffNode {
 public:
  explicit DuNode(CoeffFn a) : a_(std::move(a)) {}
  Jet eval(cd u) const override { return {a_->eval(u).du, NaN, NaN}; }

 private:
  CoeffFn a_;
};

class DmNode : public CoeffNode {
 public:
  explicit DmNode(CoeffFn a) : a_(std::move(a)) {}
  Jet eval(cd u) const override { return {a_->eval(u).dm, NaN, NaN}; }

 private:
  CoeffFn a_;
};

void check_degree(const NCTElement& a, int n) {
  if (std::abs(n) > a.max_degree)
    throw Error(ErrKind::Capacity, "degree " + std::to_string(n) + " exceeds the bound " +
                                       std::to_string(a.max_degree));
}

double rel(double num, double den) { return num / std::max(den, 1e-300); }

}  // namespace

CoeffFn cf_const(cd c) { return std::make_shared<ConstNode>(c); }
CoeffFn cf_leaf(std::function<Jet(cd)> f) { return std::make_shared<LeafNode>(std::move(f)); }
CoeffFn cf_add(CoeffFn a, CoeffFn b) { return std::make_shared<AddNode>(std::move(a), std::move(b)); }
CoeffFn cf_mul(CoeffFn a, CoeffFn b) { return std::make_shared<MulNode>(std::move(a), std::move(b)); }
CoeffFn cf_scale(CoeffFn a, cd c) { return std::make_shared<ScaleNode>(std::move(a), c); }
CoeffFn cf_shift(CoeffFn a, cd s) {
  if (s == cd(0)) return a;
  return std::make_shared<ShiftNode>(std::move(a), s);
}
CoeffFn cf_conj(CoeffFn a) { return std::make_shared<ConjNode>(std::move(a)); }
CoeffFn cf_du(CoeffFn a) { return std::make_shared<DuNode>(std::move(a)); }
CoeffFn cf_dm(CoeffFn a) { return std::make_shared<DmNode>(std::move(a)); }

NCTElement NCTElement::scalar(double eta, cd c) {
  NCTElement e;
  e.eta = eta;
  e.terms[0] = cf_const(c);
  return e;
}

NCTElement NCTElement::monomial(double eta, int n, CoeffFn f) {
  NCTElement e;
  e.eta = eta;
  check_degree(e, n);
  e.terms[n] = std::move(f);
  return e;
}

NCTElement NCTElement::operator+(const NCTElement& b) const {
  NCTElement r = *this;
  for (const auto& [n, f] : b.terms) {
    auto it = r.terms.find(n);
    if (it == r.terms.end())
      r.terms[n] = f;
    else
      it->second = cf_add(it->second, f);
  }
  return r;
}

NCTElement NCTElement::operator-(const NCTElement& b) const { return *this + b.scaled(-1.0); }

// (f V^a)(g V^b) = f(u) g(u + a eta) V^{a+b}
NCTElement NCTElement::operator*(const NCTElement& b) const {
  NCTElement r;
  r.eta = eta;
  r.max_degree = std::min(max_degree, b.max_degree);
  for (const auto& [n, f] : terms)
    for (const auto& [k, g] : b.terms) {
      check_degree(r, n + k);
      CoeffFn p = cf_mul(f, cf_shift(g, cd(n * eta)));
      auto it = r.terms.find(n + k);
      if (it == r.terms.end())
        r.terms[n + k] = p;
      else
        it->second = cf_add(it->second, p);
    }
  return r;
}

NCTElement NCTElement::scaled(cd c) const {
  NCTElement r = *this;
  for (auto& [n, f] : r.terms) f = cf_scale(f, c);
  return r;
}

// (f V^n)^* = V^{-n} fbar = fbar(u - n eta) V^{-n}
NCTElement NCTElement::adjoint() const {
  NCTElement r;
  r.eta = eta;
  r.max_degree = max_degree;
  for (const auto& [n, f] : terms) r.terms[-n] = cf_shift(cf_conj(f), cd(-n * eta));
  return r;
}

cd NCTElement::coeff(int n, cd u) const {
  auto it = terms.find(n);
  if (it == terms.end()) return 0;
  return it->second->eval(u).v;
}

cd trace_chi(const NCTElement& a, int nodes) {
  if (nodes < 4) throw Error(ErrKind::Usage, "trace needs at least 4 nodes");
  auto it = a.terms.find(0);
  if (it == a.terms.end()) return 0;
  cd s = 0;
  for (int j = 0; j < nodes; ++j) s += it->second->eval(cd(double(j) / nodes)).v;
  return s / double(nodes);
}

NCTElement derivation(int k, const NCTElement& a) {
  NCTElement r;
  r.eta = a.eta;
  r.max_degree = a.max_degree;
  if (k == 2) {
    for (const auto& [n, f] : a.terms) r.terms[n] = cf_du(f);
  } else if (k == 3) {
    for (const auto& [n, f] : a.terms) r.terms[n] = cf_scale(f, 2.0 * PI * I * double(n));
  } else {
    throw Error(ErrKind::Usage, "derivation index must be 2 or 3 here, use derivation_m for 1");
  }
  return r;
}

NCTElement derivation_m(const NCTElement& a) {
  NCTElement r;
  r.eta = a.eta;
  r.max_degree = a.max_degree;
  for (const auto& [n, f] : a.terms) {
    Jet probe = f->eval(cd(0.137));
    if (std::isnan(probe.dm.real())) throw Error(ErrKind::Usage, "element carries no m-dependence");
    r.terms[n] = cf_dm(f);
  }
  return r;
}

double element_sup(const NCTElement& a, int nodes) {
  double s = 0;
  for (const auto& [n, f] : a.terms)
    for (int j = 0; j < nodes; ++j) s = std::max(s, std::abs(f->eval(cd(double(j) / nodes)).v));
  return s;
}

double element_distance(const NCTElement& a, const NCTElement& b, int nodes) {
  return element_sup(a - b, nodes);
}

TorusParams torus_params(cd tau, double eta, double m, double eps) {
  if (!(std::abs(eta) > 0)) throw Error(ErrKind::Degenerate, "eta must be nonzero");
  TorusParams P;
  P.M = ModularParam::make(tau, eps);
  P.eta = eta;
  P.m = m;
  return P;
}

Jet dfun(cd u, const ModularParam& M) {
  Theta4 t = theta_all(u, M), d = theta_all(u, M, 1);
  Jet j;
  j.v = t[3] * t[4] + I * t[1] * t[2];
  j.du = d[3] * t[4] + t[3] * d[4] + I * (d[1] * t[2] + t[1] * d[2]);
  j.dm = 0;
  return j;
}

namespace {

struct GenRow {
  int jn, jp;
  cd cV, cVs;
};
const GenRow kGenTable[4] = {{3, 1, 1.0, 1.0}, {4, 2, -I, I}, {1, 3, 1.0, 1.0}, {2, 4, -1.0, -1.0}};

// coefficient of V (sg = +1) or V* (sg = -1) in rho(S_mu), with d/du and d/dm
CoeffFn gen_coeff(int mu, int sg, const TorusParams& P) {
  const GenRow& g = kGenTable[mu];
  ModularParam M = P.M;
  double eta = P.eta, m = P.m;
  Theta4 t0 = theta_all(0.0, M);
  cd c2 = t0[3] * t0[3] * t0[4];
  cd pre = (sg > 0 ? g.cV : g.cVs) * theta(g.jp, eta, M) * c2;
  int jn = g.jn;
  return cf_leaf([=](cd u) {
    cd arg = 2.0 * u + double(sg) * cd(eta, m);
    cd th = theta(jn, arg, M), thp = theta(jn, arg, M, 1);
    Jet a = dfun(u, M), b = dfun(-u - double(sg) * eta, M);
    cd D = a.v * b.v;
    cd dD = a.du * b.v - a.v * b.du;
    Jet r;
    r.v = pre * th / D;
    r.du = pre * (2.0 * thp / D - th * dD / (D * D));
    r.dm = pre * double(sg) * I * thp / D;
    return r;
  });
}

}  // namespace

NCTElement make_generator(int mu, const TorusParams& P) {
  if (mu < 0 || mu > 3) throw Error(ErrKind::Usage, "generator index must be 0..3");
  NCTElement e;
  e.eta = P.eta;
  e.terms[1] = gen_coeff(mu, 1, P);
  e.terms[-1] = gen_coeff(mu, -1, P);
  return e;
}

NCTElement generator_dm(int mu, const TorusParams& P) { return derivation_m(make_generator(mu, P)); }

std::array<cd, 3> sklyanin_J(const TorusParams& P) {
  Theta4 t = theta_all(P.eta, P.M);
  cd a = t[1] * t[1], b = t[2] * t[2], c = t[3] * t[3], d = t[4] * t[4];
  return {a * b / (c * d), -a * c / (b * d), a * d / (b * c)};
}

std::array<cd, 3> sklyanin_j(const TorusParams& P) {
  Theta4 t0 = theta_all(0.0, P.M), te = theta_all(P.eta, P.M), t2 = theta_all(2.0 * P.eta, P.M);
  std::array<cd, 3> r;
  for (int k = 0; k < 3; ++k) r[k] = t0[k + 2] * t2[k + 2] / (te[k + 2] * te[k + 2]);
  return r;
}

std::array<cd, 3> sklyanin_jt(const TorusParams& P) {
  Theta4 t0 = theta_all(0.0, P.M), te = theta_all(P.eta, P.M);
  std::array<cd, 3> r;
  for (int k = 0; k < 3; ++k) r[k] = t0[k + 2] * t0[k + 2] / (te[k + 2] * te[k + 2]);
  return r;
}

std::array<cd, 2> casimir_values(const TorusParams& P) {
  cd im(0, P.m);
  cd t = theta(2, im, P.M);
  return {4.0 * t * t, 4.0 * theta(2, P.eta + im, P.M) * theta(2, P.eta - im, P.M)};
}

GeneratorSet generators(const TorusParams& P) {
  GeneratorSet G;
  G.P = P;
  for (int mu = 0; mu < 4; ++mu) {
    G.S[mu] = make_generator(mu, P);
    G.dS[mu] = derivation_m(G.S[mu]);
  }
  auto C = casimir_values(P);
  G.C1 = C[0];
  G.C2 = C[1];
  G.J = sklyanin_J(P);
  G.j = sklyanin_j(P);
  G.jt = sklyanin_jt(P);
  G.sigma = 1;
  G.dsigma = 0;
  return G;
}

namespace {

NCTElement comm(const NCTElement& a, const NCTElement& b) { return a * b - b * a; }
NCTElement acomm(const NCTElement& a, const NCTElement& b) { return a * b + b * a; }

}  // namespace

// [S_l, S_m] = i [S_0, S_k]_+ and [S_0, S_k] = i J_lm [S_l, S_m]_+
std::array<double, 6> relation_residuals(const GeneratorSet& G, int nodes) {
  std::array<double, 6> r{};
  for (int k = 1; k <= 3; ++k) {
    int l = k % 3 + 1, m = (k + 1) % 3 + 1;
    NCTElement lhs = comm(G.S[l], G.S[m]), rhs = acomm(G.S[0], G.S[k]).scaled(I);
    double sc = std::max(element_sup(lhs, nodes), element_sup(rhs, nodes));
    r[k - 1] = rel(element_distance(lhs, rhs, nodes), sc);
    NCTElement lhs2 = comm(G.S[0], G.S[k]), rhs2 = acomm(G.S[l], G.S[m]).scaled(I * G.J[k - 1]);
    double sc2 = std::max(element_sup(lhs2, nodes), element_sup(rhs2, nodes));
    r[k + 2] = rel(element_distance(lhs2, rhs2, nodes), sc2);
  }
  return r;
}

double self_adjoint_residual(const NCTElement& a, int nodes) {
  return rel(element_distance(a, a.adjoint(), nodes), element_sup(a, nodes));
}

// C1 = sum S_mu^2, C2 = sum_k j_k S_k^2 as degree-0 scalars
std::array<double, 2> casimir_residuals(const GeneratorSet& G, int nodes) {
  NCTElement c1 = NCTElement::scalar(G.P.eta, 0), c2 = NCTElement::scalar(G.P.eta, 0);
  for (int mu = 0; mu < 4; ++mu) c1 = c1 + G.S[mu] * G.S[mu];
  for (int k = 1; k <= 3; ++k) c2 = c2 + (G.S[k] * G.S[k]).scaled(G.j[k - 1]);
  cd s2 = G.sigma * G.sigma;
  NCTElement e1 = NCTElement::scalar(G.P.eta, s2 * G.C1), e2 = NCTElement::scalar(G.P.eta, s2 * G.C2);
  return {rel(element_distance(c1, e1, nodes), std::abs(s2 * G.C1)),
          rel(element_distance(c2, e2, nodes), std::abs(s2 * G.C2))};
}

GeneratorSet normalized_generators(const TorusParams& P, const PhiPoint& phi, cd lam) {
  GeneratorSet G = generators(P);
  double ps = std::sin(phi[0]) * std::sin(phi[1]) * std::sin(phi[2]);
  cd im(0, P.m);
  cd t2 = theta(2, im, P.M), t2p = theta(2, im, P.M, 1);
  cd ap = theta(2, P.eta + im, P.M), am = theta(2, P.eta - im, P.M);
  cd app = theta(2, P.eta + im, P.M, 1), amp = theta(2, P.eta - im, P.M, 1);
  cd dC1 = 8.0 * I * t2 * t2p;
  cd dC2 = 4.0 * I * (app * am - ap * amp);
  cd K = G.C1 - lam * G.C2, dK = dC1 - lam * dC2;
  if (std::abs(K) < 1e-300) throw Error(ErrKind::Singular, "C1 - lambda C2 vanishes");
  G.sigma = std::sqrt(cd(ps)) / std::sqrt(K);
  G.dsigma = -0.5 * G.sigma * dK / K;
  for (int mu = 0; mu < 4; ++mu) {
    NCTElement s = G.S[mu];
    G.dS[mu] = s.scaled(G.dsigma) + G.dS[mu].scaled(G.sigma);
    G.S[mu] = s.scaled(G.sigma);
  }
  G.normalized = true;
  return G;
}

double sphere_residual(const GeneratorSet& G, const PhiPoint& phi, int nodes) {
  ScaleFactors sf = scale_factors(phi);
  NCTElement q = NCTElement::scalar(G.P.eta, 0);
  for (int mu = 0; mu < 4; ++mu) {
    NCTElement x = G.S[mu].scaled(1.0 / sf.lambda_mu[mu]);
    q = q + x * x;
  }
  return element_distance(q, NCTElement::scalar(G.P.eta, 1.0), nodes);
}

// Q2 = 1/2 sum sin 2phi_k cos(-phi_k + phi_l + phi_m) (x^k)^2
double q2_center_residual(const GeneratorSet& G, const PhiPoint& phi, cd lam, int nodes) {
  ScaleFactors sf = scale_factors(phi);
  NCTElement q = NCTElement::scalar(G.P.eta, 0);
  for (int k = 0; k < 3; ++k) {
    int l = (k + 1) % 3, m = (k + 2) % 3;
    double w = 0.5 * std::sin(2 * phi[k]) * std::cos(-phi[k] + phi[l] + phi[m]);
    NCTElement x = G.S[k + 1].scaled(1.0 / sf.lambda_mu[k + 1]);
    q = q + (x * x).scaled(w);
  }
  cd target = lam * G.C2 * G.sigma * G.sigma;
  return rel(element_distance(q, NCTElement::scalar(G.P.eta, target), nodes), std::abs(target));
}

namespace {

EllipticTriple bare_triple(const TorusParams& P) {
  EllipticTriple T;
  T.M = P.M;
  T.eta = P.eta;
  T.omega = {0.5, 0.5 * (1.0 + P.M.tau), 0.5 * P.M.tau};
  return T;
}

const double kEps[4] = {1, 1, 1, -1};

cd L_value(cd u, const EllipticTriple& T) {
  Theta4 te = theta_all(T.eta, T.M);
  Vec4 z = psi_raw(u, T);
  return I * te[1] * te[2] * z[1] + te[3] * te[4] * z[3];
}

cd Q_form(const Vec4& Z, const Vec4& Zp, cd J23) {
  return J23 * (Z[0] * Zp[0] + Z[1] * Zp[1]) + Z[2] * Zp[2] - Z[3] * Zp[3];
}

cd nu_of(const TorusParams& P) {
  cd t3m = theta(3, cd(0, P.m), P.M), t30 = theta(3, 0.0, P.M);
  cd t3e = theta(3, P.eta, P.M), t4e = theta(4, P.eta, P.M);
  return 2.0 * t3m * t3m / (t30 * t30 * t3e * t3e * t4e * t4e);
}

}  // namespace

// rho(Y_mu) = psi_mu(u - im/2) L(u)^{-1} V* + eps_mu V psi_mu(u + im/2) Lbar(u)^{-1}
SimplifiedData simplified_generators(const TorusParams& P) {
  SimplifiedData D;
  D.T = bare_triple(P);
  EllipticTriple T = D.T;
  D.L = cf_leaf([T](cd u) { return Jet{L_value(u, T), NaN, NaN}; });
  D.Lbar = cf_conj(D.L);
  D.nu = nu_of(P);
  double eta = P.eta, m = P.m;
  for (int mu = 0; mu < 4; ++mu) {
    CoeffFn cm = cf_leaf([T, mu, m](cd u) {
      return Jet{psi_raw(u - 0.5 * cd(0, m), T)[mu] / L_value(u, T), NaN, NaN};
    });
    // V f(u) = f(u + eta) V
    double e = kEps[mu];
    CoeffFn cp = cf_leaf([T, mu, m, eta, e](cd u) {
      cd w = u + eta;
      cd lb = std::conj(L_value(std::conj(w), T));
      return Jet{e * psi_raw(w + 0.5 * cd(0, m), T)[mu] / lb, NaN, NaN};
    });
    NCTElement y;
    y.eta = eta;
    y.terms[-1] = cm;
    y.terms[1] = cp;
    D.Y[mu] = y;
  }
  return D;
}

std::array<double, 4> equivalence_residuals(const GeneratorSet& G, const SimplifiedData& D, int nodes) {
  Theta4 te = theta_all(G.P.eta, G.P.M), t0 = theta_all(0.0, G.P.M);
  cd d = te[1] * te[3] / (te[2] * te[4]);
  cd gamma = te[2] * te[4] * t0[3];
  std::array<NCTElement, 4> want = {D.Y[2].scaled(d), D.Y[3].scaled(I), D.Y[0].scaled(d),
                                    D.Y[1].scaled(-1.0)};
  std::array<double, 4> r{};
  for (int mu = 0; mu < 4; ++mu) {
    NCTElement lhs = G.S[mu].scaled(1.0 / (gamma * G.sigma));
    r[mu] = rel(element_distance(lhs, want[mu], nodes), element_sup(want[mu], nodes));
  }
  return r;
}

double lemrho2_residual(const SimplifiedData& D, const TorusParams& P, int nodes) {
  cd J23 = sklyanin_J(P)[0];
  cd hm(0, 0.5 * P.m);
  double worst = 0;
  for (int j = 0; j < nodes; ++j) {
    cd u = double(j) / nodes;
    Vec4 Z = psi_raw(u - hm, D.T), Zp = psi_raw(u + hm, D.T);
    for (int k = 0; k < 4; ++k) Zp[k] *= kEps[k];
    cd lhs = D.nu * D.L->eval(u).v * D.Lbar->eval(u).v;
    cd rhs = Q_form(Z, Zp, J23);
    worst = std::max(worst, rel(std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs))));
  }
  return worst;
}

// W W' = L^{-1} V* V Lbar^{-1} = 1/(L Lbar), compared with nu/Q
double ww_rule_residual(const SimplifiedData& D, const TorusParams& P, int nodes) {
  CoeffFn Li = cf_leaf([L = D.L](cd u) { return Jet{1.0 / L->eval(u).v, NaN, NaN}; });
  CoeffFn Lbi = cf_leaf([L = D.Lbar](cd u) { return Jet{1.0 / L->eval(u).v, NaN, NaN}; });
  NCTElement W = NCTElement::monomial(P.eta, -1, Li);
  NCTElement Wp = NCTElement::monomial(P.eta, 1, cf_shift(Lbi, cd(P.eta)));
  NCTElement WW = W * Wp;
  cd J23 = sklyanin_J(P)[0];
  cd hm(0, 0.5 * P.m);
  double worst = 0;
  for (int j = 0; j < nodes; ++j) {
    cd u = double(j) / nodes;
    Vec4 Z = psi_raw(u - hm, D.T), Zp = psi_raw(u + hm, D.T);
    for (int k = 0; k < 4; ++k) Zp[k] *= kEps[k];
    cd want = D.nu / Q_form(Z, Zp, J23);
    cd got = WW.coeff(0, u);
    worst = std::max(worst, rel(std::abs(got - want), std::abs(want)));
  }
  return worst;
}

// sigma is the cubic map on the fiber, sigma^{-1} = I0 sigma I0
double cross_rule_residual(const SimplifiedData& D, const TorusParams& P, int nodes) {
  cd hm(0, 0.5 * P.m);
  double worst = 0;
  for (int j = 0; j < nodes; ++j) {
    cd u = double(j) / nodes + cd(0, 0.03);
    Vec4 Z = psi_raw(u - hm, D.T), Zs = psi_raw(u - P.eta - hm, D.T);
    ProjPoint sZ = sigma_cubic(ProjPoint(Z, Role::Z));
    worst = std::max(worst, projective_distance(sZ.c, Zs));
    Vec4 Zp = psi_raw(u + hm, D.T), Zps = psi_raw(u - P.eta + hm, D.T);
    for (int k = 0; k < 4; ++k) {
      Zp[k] *= kEps[k];
      Zps[k] *= kEps[k];
    }
    // sigma^{-1} = I0 sigma I0
    ProjPoint a0 = involution(Involution::I0, ProjPoint(Zp, Role::Z));
    ProjPoint s1 = involution(Involution::I0, sigma_cubic(a0));
    worst = std::max(worst, projective_distance(s1.c, Zps));
  }
  return worst;
}

DeltaFit measure_delta(const SimplifiedData& D, const TorusParams& P, int nodes) {
  GeneratorSet G = generators(P);
  Theta4 te = theta_all(P.eta, P.M);
  cd d = te[1] * te[3] / (te[2] * te[4]);
  // theta-built Y from S: Y2 = S0/d, Y3 = -i S1, Y0 = S2/d, Y1 = -S3
  std::array<NCTElement, 4> Yt = {G.S[2].scaled(1.0 / d), G.S[3].scaled(-1.0), G.S[0].scaled(1.0 / d),
                                  G.S[1].scaled(-I)};
  cd sq = std::sqrt(D.nu);
  cd hm(0, 0.5 * P.m);
  std::vector<cd> ratios;
  for (int mu = 0; mu < 4; ++mu)
    for (int j = 0; j < nodes; ++j) {
      cd u = double(j) / nodes;
      // V* coefficient of Z_mu W~ is Z_mu(u) / (L(u) sqrt nu)
      cd base = psi_raw(u - hm, D.T)[mu] / (D.L->eval(u).v * sq);
      if (std::abs(base) < 1e-8) continue;
      ratios.push_back(Yt[mu].coeff(-1, u) / base);
    }
  if (ratios.empty()) throw Error(ErrKind::Numeric, "no usable nodes for the delta fit");
  cd mean = 0;
  for (cd r : ratios) mean += r;
  mean /= double(ratios.size());
  double spread = 0;
  for (cd r : ratios) spread = std::max(spread, std::abs(r - mean) / std::abs(mean));
  return {mean, spread};
}

}  // namespace ncs
