#include "ncs/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <thread>

#include "ncs/charvar.hpp"
#include "ncs/elliptic.hpp"
#include "ncs/moduli.hpp"
#include "ncs/nctorus.hpp"
#include "ncs/pairing.hpp"
#include "ncs/theta.hpp"

namespace ncs {

void RunConfig::validate() const {
  if (!(eps > 0 && eps <= 1e-6)) throw Error(ErrKind::Config, "eps must lie in (0, 1e-6]");
  if (u_nodes < 16 || quadrature_nodes < 16) throw Error(ErrKind::Config, "node counts must be >= 16");
  if (m_nodes < 4) throw Error(ErrKind::Config, "m_nodes must be >= 4");
  if (output_format != "json" && output_format != "csv")
    throw Error(ErrKind::Config, "output format must be json or csv");
}

bool CriterionResult::pass() const {
  if (budget > 0 && seconds > budget) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool VerificationReport::all_pass() const {
  return std::all_of(groups.begin(), groups.end(), [](const CriterionResult& g) { return g.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n = {"theta", "minors", "variety", "elliptic", "torus", "pairing", "all"};
  return n;
}

namespace {

using Clock = std::chrono::steady_clock;

CheckResult check(std::string id, std::string ref, double residual, double tol, std::string note = "") {
  CheckResult c;
  c.id = std::move(id);
  c.paper_ref = std::move(ref);
  c.residual = residual;
  c.tolerance = tol;
  c.pass = std::isfinite(residual) && residual < tol;
  c.note = std::move(note);
  return c;
}

// evaluate f(0..n-1) on worker threads, results in order
template <class T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& f) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<T> out(n);
  std::vector<std::future<void>> jobs;
  int per = (n + int(hw) - 1) / int(hw);
  for (int start = 0; start < n; start += per) {
    int stop = std::min(n, start + per);
    jobs.push_back(std::async(std::launch::async, [&, start, stop] {
      for (int i = start; i < stop; ++i) out[i] = f(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

cd rnd_c(std::mt19937_64& g, double s = 1.0) {
  std::normal_distribution<double> n(0.0, s);
  double a = n(g);
  double b = n(g);
  return {a, b};
}

// generic even phi with angles in (0.15, pi/2 - 0.15) and gaps above 0.12, ascending
PhiPoint random_even_phi(std::mt19937_64& g) {
  std::uniform_real_distribution<double> U(0.15, PI / 2 - 0.15);
  for (;;) {
    std::array<double, 3> a{U(g), U(g), U(g)};
    std::sort(a.begin(), a.end());
    if (a[1] - a[0] < 0.12 || a[2] - a[1] < 0.12) continue;
    PhiPoint p(a[0], a[1], a[2]);
    if (is_even_generic(p)) return p;
  }
}

const PhiPoint kPhi(1.1, 0.8, 0.4);

// 1. sixteen theta relations
void crit1(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 1);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.5, 2.0);
  double worst = 0;
  for (int draw = 0; draw < 100; ++draw) {
    ModularParam M = ModularParam::make(cd(re(g), im(g)), cfg.eps);
    cd a = rnd_c(g, 0.4), b = rnd_c(g, 0.4), c = rnd_c(g, 0.4), d = rnd_c(g, 0.4);
    for (int r = 1; r <= 16; ++r) worst = std::max(worst, theta_relation_residual(r, a, b, c, d, M));
  }
  R.checks.push_back(check("theta.relations16", "sixteen quartic theta relations, 100 random draws", worst, 1e-11));
  double lw = 0;
  for (int draw = 0; draw < 20; ++draw) {
    cd tau(re(g) * 0.6, im(g));
    ModularParam M = ModularParam::make(tau, cfg.eps);
    cd lam = lambda_of_tau(M);
    ModularParam B = tau_of_lambda(lam, cfg.eps);
    lw = std::max(lw, std::abs(lambda_of_tau(B) - lam) / std::abs(lam));
  }
  R.checks.push_back(check("theta.lambda_inverse", "modular lambda inversion round trip", lw, 1e-10));
}

// 2. appendix minors against the determinants
void crit2(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 2);
  std::uniform_real_distribution<double> U(0, PI);
  double worst = 0;
  for (int t = 0; t < 50; ++t) {
    PhiPoint p(U(g), U(g), U(g));
    Vec4 x{rnd_c(g), rnd_c(g), rnd_c(g), rnd_c(g)};
    auto m = minors15(relation_matrix(p, ProjPoint(x, Role::x)));
    auto a = appendix_minors(p, x);
    for (int k = 0; k < 15; ++k) {
      double sc = std::max(std::abs(m[k]), std::abs(a[k]));
      if (sc > 0) worst = std::max(worst, std::abs(m[k] - a[k]) / sc);
    }
  }
  R.checks.push_back(check("minors.factorized15", "factorized 4x4 minors of the relation matrix in x", worst, 1e-9));
}

// 3. characteristic varieties of the eleven cases
void crit3(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 3);
  for (int c = 0; c < 11; ++c) {
    CaseLoci L = case_loci(CaseId(c), g);
    int fails = 0, total = 0;
    double worst = 0;
    for (const auto& comp : L.comps)
      for (int s = 0; s < 20; ++s) {
        ProjPoint p = comp.sample(g);
        ++total;
        double d = variety_defect(L.src, p);
        worst = std::max(worst, d);
        if (!is_on_variety(L.src, p)) ++fails;
      }
    std::string nm = case_name(CaseId(c));
    R.checks.push_back(check("variety." + nm, "characteristic variety components, geometric data table", worst,
                             1e-9, std::to_string(total - fails) + "/" + std::to_string(total) + " on variety"));
    bool ok = classify(L.phi).case_id == CaseId(c);
    R.checks.push_back(check("variety." + nm + ".classify", "case label of the table representative", ok ? 0 : 1, 0.5));
  }
  // Generic: a point of the first quadric alone is off the variety
  CaseLoci L = case_loci(CaseId::Generic, g);
  double off = 1e300;
  for (int k = 0; k < 20; ++k) {
    Vec4 w{0, rnd_c(g), rnd_c(g), rnd_c(g)};
    w[0] = I * std::sqrt(w[1] * w[1] + w[2] * w[2] + w[3] * w[3]);
    off = std::min(off, variety_defect(L.src, ProjPoint(w, Role::Z)));
  }
  R.checks.push_back(check("variety.Generic.control", "points of one quadric alone are off the variety",
                           off > 1e-6 ? 0 : 1, 0.5, "min defect " + std::to_string(off)));
}

// 4. theta parametrization of the fiber and special points
void crit4(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 4);
  PhiPoint ph = even_frame(kPhi);
  EllipticTriple T = elliptic_triple(ph, cfg.eps);
  auto s = s_values(ph);
  ResolventTriple st{s[0], s[1], s[2]};
  double fr = 0;
  for (int i = 0; i < 50; ++i) {
    cd z(std::uniform_real_distribution<double>(0, 1)(g), std::uniform_real_distribution<double>(0, 1)(g) * T.M.tau.imag());
    fr = std::max(fr, fiber_residual(psi(z, T), st));
  }
  R.checks.push_back(check("elliptic.fiber", "psi(z) lies on the biquadratic fiber of s", fr, 1e-11));
  cd tau = T.M.tau, eta = T.eta;
  const char* names[8] = {"p0", "p1", "p2", "p3", "q0", "q1", "q2", "q3"};
  cd zs[8] = {eta, eta + 0.5, eta + 0.5 + tau / 2.0, eta + tau / 2.0, 0.0, 0.5, 0.5 + tau / 2.0, tau / 2.0};
  double sp = 0;
  for (int i = 0; i < 8; ++i) {
    ProjPoint u = change_basis(Basis::u_of_Z, psi(zs[i], T), ph);
    sp = std::max(sp, projective_distance(u.c, special_point(names[i]).c));
  }
  R.checks.push_back(check("elliptic.special_points", "images of the half periods and of eta + half periods", sp, 1e-9));
  R.checks.push_back(check("elliptic.proportionality", "lambda (a,b,c) = theta_j^2(0)/theta_j^2(eta)", T.prop_residual,
                           1e-10));
}

// 5. the cubic map is translation by -eta
void crit5(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 5);
  PhiPoint ph = even_frame(kPhi);
  EllipticTriple T = elliptic_triple(ph, cfg.eps);
  std::uniform_real_distribution<double> U(0, 1);
  double a = 0, b = 0;
  for (int i = 0; i < 50; ++i) {
    cd z(U(g), U(g) * T.M.tau.imag());
    ProjPoint Z = psi(z, T);
    ProjPoint sZ = sigma_cubic(Z);
    a = std::max(a, projective_distance(sZ.c, psi(z - T.eta, T).c));
    ProjPoint II0 = involution(Involution::I, involution(Involution::I0, Z));
    b = std::max(b, projective_distance(II0.c, sZ.c));
  }
  R.checks.push_back(check("variety.sigma_shift", "cubic correspondence equals translation by -eta", a, 1e-9));
  R.checks.push_back(check("variety.sigma_two_involutions", "sigma = I o I0 on the fiber", b, 1e-9));
}

// 6. Sklyanin representation on the noncommutative torus
void crit6(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 6);
  struct Draw {
    PhiPoint phi;
    double frac;
  };
  std::vector<Draw> draws;
  std::uniform_real_distribution<double> U(0.05, 0.95);
  for (int i = 0; i < 10; ++i) {
    PhiPoint p = random_even_phi(g);
    draws.push_back({p, U(g)});
  }
  struct Out {
    double rel = 0, sa = 0, cas = 0, sph = 0;
  };
  auto res = parallel_map<Out>(10, [&](int i) {
    EllipticTriple T = elliptic_triple(draws[i].phi, cfg.eps);
    double m = draws[i].frac * T.M.tau.imag();
    TorusParams P = torus_params(T.M.tau, T.eta.real(), m, cfg.eps);
    GeneratorSet G = normalized_generators(P, draws[i].phi, T.lam);
    Out o;
    for (double x : relation_residuals(G, cfg.u_nodes)) o.rel = std::max(o.rel, x);
    for (int mu = 0; mu < 4; ++mu) o.sa = std::max(o.sa, self_adjoint_residual(G.S[mu], cfg.u_nodes));
    for (double x : casimir_residuals(G, cfg.u_nodes)) o.cas = std::max(o.cas, x);
    o.sph = sphere_residual(G, draws[i].phi, cfg.u_nodes);
    return o;
  });
  Out w;
  for (auto& o : res) {
    w.rel = std::max(w.rel, o.rel);
    w.sa = std::max(w.sa, o.sa);
    w.cas = std::max(w.cas, o.cas);
    w.sph = std::max(w.sph, o.sph);
  }
  R.checks.push_back(check("torus.relations", "both Sklyanin relation families with theta J", w.rel, 1e-9));
  R.checks.push_back(check("torus.self_adjoint", "images of the generators are self-adjoint", w.sa, 1e-9));
  R.checks.push_back(check("torus.casimirs", "Casimir values 4 theta2^2(im) and 4 theta2(eta+im) theta2(eta-im)",
                           w.cas, 1e-9));
  R.checks.push_back(check("torus.sphere", "normalized representation sends the sphere relation to 1", w.sph, 1e-9));
}

const std::array<std::pair<cd, double>, 3> kPairs = {
    std::pair<cd, double>{cd(0, 1.2), 0.3}, {cd(0, 0.9), 0.17}, {cd(0, 1.6), 0.41}};

// 7. density of the pairing against the closed form g(m)
void crit7(CriterionResult& R, const RunConfig& cfg) {
  int n = cfg.m_nodes;
  auto res = parallel_map<double>(3 * n, [&](int i) {
    auto [tau, eta] = kPairs[i / n];
    double m = tau.imag() * (0.05 + 0.9 * (i % n) / double(n - 1));
    TorusParams P = torus_params(tau, eta, m, cfg.eps);
    return std::abs(pairing_density(P, cfg.u_nodes) / g_closed(P) - 1.0);
  });
  for (int k = 0; k < 3; ++k) {
    double w = *std::max_element(res.begin() + k * n, res.begin() + (k + 1) * n);
    char id[64];
    std::snprintf(id, sizeof id, "pairing.D_over_g.tau%.2fi_eta%.2f", kPairs[k].first.imag(), kPairs[k].second);
    R.checks.push_back(check(id, "cyclic cocycle pairing density equals g(m)", w, 1e-7,
                             "orientation sign " + std::to_string(orientation_sign())));
  }
}

// 8. volume form against 6 pi Omega dR
void crit8(CriterionResult& R, const RunConfig& cfg) {
  PhiPoint ph = even_frame(kPhi);
  EllipticTriple T = elliptic_triple(ph, cfg.eps);
  JacobianData J = period_Omega(ph, T, cfg.quadrature_nodes);
  double Tm = T.M.tau.imag();
  R.checks.push_back(check("jacobian.period", "period Omega by quadrature against its theta closed form",
                           std::abs(J.Omega - J.Omega_closed) / std::abs(J.Omega_closed), 1e-10));
  int n = cfg.m_nodes;
  auto vols = parallel_map<VolPoint>(n, [&](int j) {
    double m = Tm * (0.05 + 0.9 * j / double(n - 1));
    return vol_residual(m, ph, T, J, cfg.u_nodes);
  });
  double w = 0;
  int indet = 0;
  for (auto& v : vols) {
    w = std::max(w, v.residual);
    indet += v.indeterminate;
  }
  R.checks.push_back(check("jacobian.vol_pointwise", "omega(m) = 6 pi Omega dR/dm on the real component", w, 1e-6,
                           std::to_string(indet) + " indeterminate"));
  auto ints = parallel_map<VolIntegral>(2, [&](int k) {
    return k == 0 ? vol_integral(ph, T, J, 0.1 * Tm, 0.9 * Tm, 12, 2, cfg.u_nodes)
                  : vol_integral(ph, T, J, 0.1 * Tm, 0.5 * Tm, 12, 2, cfg.u_nodes);
  });
  R.checks.push_back(check("jacobian.vol_integral", "integrated form over [0.1, 0.9] Im tau, scaled by int |omega|",
                           ints[0].residual, 1e-6));
  R.checks.push_back(check("jacobian.vol_integral_half", "integrated form over [0.1, 0.5] Im tau", ints[1].residual,
                           1e-6));
  // dR three ways
  auto s = s_values(ph);
  double w3 = 0;
  for (int j = 0; j < n; ++j) {
    double m = Tm * (0.05 + 0.9 * j / double(n - 1)), h = 1e-5;
    cd an = dR_of_m(m, ph, T);
    cd fd = (R_of_m(m + h, ph, T) - R_of_m(m - h, ph, T)) / (2 * h);
    Vec4 W = jacobian_frame(curve_Z(m, T), ph), dW = jacobian_frame(curve_dZ(m, T), ph);
    cd jc = jacobian_J(ProjPoint(W, Role::Y), ph) * chi_form(1, W, dW, s);
    double sc = std::abs(an);
    w3 = std::max({w3, std::abs(an - fd) / sc, std::abs(an - jc) / sc, std::abs(fd - jc) / sc});
  }
  R.checks.push_back(check("jacobian.dR_three_ways", "dR by chain rule, finite difference and J chi", w3, 1e-8));
}

// 9. ratio identities and central forms
void crit9(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 9);
  PhiPoint ph = even_frame(kPhi);
  EllipticTriple T = elliptic_triple(ph, cfg.eps);
  double Tm = T.M.tau.imag();
  std::uniform_real_distribution<double> U(0.02, 0.98);
  double r1 = 0, r2 = 0, rp = 1e300;
  for (int i = 0; i < 20; ++i) {
    RatioResidual r = ratio_identity_residual(ProjPoint(curve_Z(U(g) * Tm, T), Role::Z), ph);
    r1 = std::max(r1, r.rat1);
    r2 = std::max(r2, r.rat2);
    rp = std::min(rp, r.rat2_printed_b);
  }
  R.checks.push_back(check("central.rat1", "primed ratio identity with j = I3 o I0", r1, 1e-10));
  R.checks.push_back(check("central.rat2", "ratio identity with j2 = I2 o I0, b = 1/(s1 t1)", r2, 1e-10,
                           "with b = sin phi2 sin phi3 / cos(phi2 - phi3) the smallest gap is " + std::to_string(rp)));
  auto s = s_values(ph);
  ResolventTriple st{s[0], s[1], s[2]};
  auto Jv = J_values(ph);
  std::array<cd, 3> J{Jv[0], Jv[1], Jv[2]};
  std::vector<std::pair<std::string, QuadraticForm>> forms = {
      {"Q", form_Q(ph)}, {"Q_1", form_Qm(1, J)}, {"Q_2", form_Qm(2, J)}, {"Q_3", form_Qm(3, J)}, {"P", form_P(ph)}};
  std::uniform_real_distribution<double> V(0, 1);
  for (auto& [nm, q] : forms) {
    double w = 0;
    int deg = 0;
    for (int i = 0; i < 20; ++i) {
      cd z1(V(g), V(g) * Tm), z2(V(g), V(g) * Tm);
      CentralityResult c = centrality_residual(q, st, psi(z1, T), psi(z2, T));
      w = std::max(w, c.residual);
      deg += c.degenerate;
    }
    R.checks.push_back(check("central." + nm, "central quadratic form on fiber pairs", w, 1e-10,
                             std::to_string(deg) + " degenerate pairs"));
  }
}

// 10. flow and duality
void crit10(CriterionResult& R, const RunConfig& cfg) {
  std::mt19937_64 g(cfg.seed + 10);
  std::vector<PhiPoint> pts = {kPhi};
  for (int i = 0; i < 4; ++i) pts.push_back(random_even_phi(g));
  double jd = 0, sc = 0, inv = 0, lam = 0, tg = 0, hr = 0;
  int trivial = 0;
  for (const auto& p : pts) {
    jd = std::max(jd, J_drift(p, 0.1, 400));
    sc = std::max(sc, s_scaling_residual(p));
    for (int j = 1; j <= 3; ++j) {
      PhiPoint q = duality(j, duality(j, p));
      for (int k = 0; k < 3; ++k) {
        double d = std::remainder(q[k] - p[k], PI);
        inv = std::max(inv, std::abs(d));
      }
      DualShift ds = duality_shift(even_frame(p), j, cfg.eps);
      lam = std::max(lam, ds.lambda_gap);
      tg = std::max(tg, ds.tau_gap);
      hr = std::max(hr, ds.residual);
      if (ds.half[0] == 0 && ds.half[1] == 0) ++trivial;
    }
  }
  R.checks.push_back(check("moduli.J_conservation", "J values constant along the scaling flow, t = 0.1", jd, 1e-8));
  R.checks.push_back(check("moduli.s_scaling", "d s_k/dt = 4 prod sin phi_j s_k", sc, 1e-10));
  R.checks.push_back(check("moduli.duality_involutive", "f_j o f_j = id mod pi", inv, 1e-12));
  R.checks.push_back(check("moduli.duality_lambda", "same lambda invariant after duality", lam, 1e-10));
  R.checks.push_back(check("moduli.duality_tau", "Gamma(2)-equal modulus after duality", tg, 1e-10));
  R.checks.push_back(check("moduli.duality_half_period", "eta shifts by a nonzero half period mod L", hr, 1e-10,
                           std::to_string(trivial) + " trivial shifts"));
  R.checks.push_back(check("moduli.duality_nontrivial", "every shift is a nonzero two-torsion point", trivial, 0.5));
}

const char* kTitles[11] = {"",
                           "sixteen theta relations",
                           "factorized minors",
                           "geometric data table",
                           "theta parametrization",
                           "cubic map",
                           "Sklyanin representation",
                           "pairing density g(m)",
                           "volume form",
                           "ratio identities and central forms",
                           "flow and duality"};
const double kBudget[11] = {0, 5, 5, 20, 5, 5, 30, 60, 60, 10, 10};

}  // namespace

CriterionResult run_criterion(int k, const RunConfig& cfg) {
  if (k < 1 || k > 10) throw Error(ErrKind::Usage, "criterion number must be 1..10");
  CriterionResult R;
  R.number = k;
  R.title = kTitles[k];
  R.budget = kBudget[k];
  auto t0 = Clock::now();
  try {
    switch (k) {
      case 1: crit1(R, cfg); break;
      case 2: crit2(R, cfg); break;
      case 3: crit3(R, cfg); break;
      case 4: crit4(R, cfg); break;
      case 5: crit5(R, cfg); break;
      case 6: crit6(R, cfg); break;
      case 7: crit7(R, cfg); break;
      case 8: crit8(R, cfg); break;
      case 9: crit9(R, cfg); break;
      case 10: crit10(R, cfg); break;
    }
  } catch (const std::exception& e) {
    R.checks.push_back(check("error", "exception while running the criterion", INFINITY, 0, e.what()));
  }
  R.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return R;
}

CriterionResult torus_extras(const RunConfig& cfg) {
  CriterionResult R;
  R.title = "torus module extras";
  auto t0 = Clock::now();
  try {
    int nodes = cfg.u_nodes;
    TorusParams P = torus_params(cd(0, 1.2), 0.3, 0.4, cfg.eps);
    GeneratorSet G = generators(P);
    // trace properties
    NCTElement one = NCTElement::scalar(P.eta, 1.0);
    R.checks.push_back(check("torus.trace_unit", "trace of 1", std::abs(trace_chi(one, nodes) - 1.0), 1e-14));
    NCTElement a = G.S[0] * G.S[1] + G.S[2], b = G.S[3] * G.S[0];
    double tr = std::abs(trace_chi(a * b, nodes) - trace_chi(b * a, nodes)) /
                std::max(1.0, std::abs(trace_chi(a * b, nodes)));
    R.checks.push_back(check("torus.tracial", "chi(ab) = chi(ba)", tr, 1e-11));
    cd pos = trace_chi(a.adjoint() * a, nodes);
    R.checks.push_back(check("torus.positivity", "chi(a* a) >= 0", std::max(0.0, -pos.real()) + std::abs(pos.imag()),
                             1e-12));
    NCTElement ab = G.S[1] * G.S[2];
    NCTElement lb = derivation(2, ab) - (derivation(2, G.S[1]) * G.S[2] + G.S[1] * derivation(2, G.S[2]));
    R.checks.push_back(check("torus.leibniz", "delta_2 is a derivation", element_sup(lb, nodes) / element_sup(derivation(2, ab), nodes), 1e-9));
    NCTElement c = (G.S[0] * G.S[1]) * G.S[2], d = G.S[0] * (G.S[1] * G.S[2]);
    R.checks.push_back(check("torus.associative", "associativity of the crossed product",
                             element_distance(c, d, nodes) / element_sup(c, nodes), 1e-11));
    SimplifiedData D = simplified_generators(P);
    double eq = 0;
    for (double x : equivalence_residuals(G, D, nodes)) eq = std::max(eq, x);
    R.checks.push_back(check("torus.simplified_generators", "theta generators over gamma against the L(u) form", eq, 1e-9));
    R.checks.push_back(check("torus.lemrho2", "nu L Lbar = Q(Z, Z')", lemrho2_residual(D, P, nodes), 1e-9));
    R.checks.push_back(check("torus.ww_rule", "(L^-1 V*)(V Lbar^-1) = nu/Q(Z, Z')", ww_rule_residual(D, P, nodes), 1e-9));
    R.checks.push_back(check("torus.cross_rule", "W f(Z, Z') = f(sigma Z, sigma^-1 Z') W", cross_rule_residual(D, P), 1e-9));
    DeltaFit df = measure_delta(D, P);
    char buf[96];
    std::snprintf(buf, sizeof buf, "delta(m) = %.12g%+.3gi", df.delta.real(), df.delta.imag());
    R.checks.push_back(check("torus.delta_constant", "overall scalar of the W form is constant in u and mu", df.spread,
                             1e-9, buf));
    PhiPoint ph = even_frame(kPhi);
    EllipticTriple T = elliptic_triple(ph, cfg.eps);
    TorusParams P2 = torus_params(T.M.tau, T.eta.real(), 0.37 * T.M.tau.imag(), cfg.eps);
    GeneratorSet Gn = normalized_generators(P2, ph, T.lam);
    R.checks.push_back(check("torus.q2_center", "Q2 maps to lambda C2", q2_center_residual(Gn, ph, T.lam, nodes), 1e-9));
    R.checks.push_back(check("torus.c1_minus_lambda_c2", "C1 - lambda C2 = b1 theta1^2(im) + b2 theta2^2(im)",
                             c1c2_residual(P2.m, ph, T), 1e-10));
  } catch (const std::exception& e) {
    R.checks.push_back(check("error", "exception in torus extras", INFINITY, 0, e.what()));
  }
  R.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return R;
}

CriterionResult pairing_extras(const RunConfig& cfg) {
  CriterionResult R;
  R.title = "pairing module extras";
  auto t0 = Clock::now();
  try {
    std::mt19937_64 g(cfg.seed + 11);
    int nodes = cfg.u_nodes;
    double e1 = 0, sc = 0;
    for (int i = 0; i < 20; ++i) {
      PhiPoint p = random_even_phi(g);
      e1 = std::max(e1, ending1_residual(p));
      sc = std::max(sc, cycle_scaling_residual(p));
    }
    R.checks.push_back(check("pairing.ending1", "cosine ratio equals (n..)(s..) on all index tuples", e1, 1e-12));
    R.checks.push_back(check("pairing.cycle_scaling", "x-form of the cycle rescaled equals the S-form", sc, 1e-12));
    TorusParams P = torus_params(cd(0, 1.2), 0.3, 0.4, cfg.eps);
    R.checks.push_back(check("pairing.resder", "sigma'(m) terms drop out of the pairing", resder_residual(P, nodes), 1e-9));
    GeneratorSet G = generators(P);
    SlotImages im = slot_images(G.S, G.dS);
    ChernCycle cyc = weighted_cycle(theta_sigmas(P));
    cd d0 = pair_cycle(cyc, im, nodes), d1 = pair_cycle(cyc, im, nodes, true);
    cd dp = pairing_density(P, nodes);
    R.checks.push_back(check("pairing.cyclicity", "cyclic rotation of the tensor legs with the graded sign",
                             std::abs(d1 - d0) / std::abs(d0), 1e-9));
    TorusParams Pn = torus_params(cd(0, 1.2), 0.3, -0.4, cfg.eps);
    cd dn = pairing_density(Pn, nodes);
    R.checks.push_back(check("pairing.odd_in_m", "D(-m) = -D(m)", std::abs(dn + dp) / std::abs(dp), 1e-8));
    PhiPoint ph = even_frame(kPhi);
    EllipticTriple T = elliptic_triple(ph, cfg.eps);
    OmegaData od = omega_density(0.3 * T.M.tau.imag(), ph, T, nodes, true);
    R.checks.push_back(check("pairing.direct_normalized", "normalized generators paired directly against sigma^4 D",
                             std::abs(od.direct - od.omega) / std::abs(od.omega), 1e-7));
    R.checks.push_back(check("pairing.omega_real", "omega density is real", std::abs(od.omega.imag()) / std::abs(od.omega),
                             1e-9));
    ChernCycle cs = chern_cycle(ph, CycleVariant::S), cg = chern_cycle(ph, CycleVariant::sigma, T.lam);
    double lin = 0;
    for (size_t i = 0; i < cs.terms.size(); ++i) lin = std::max(lin, std::abs(cg.terms[i].coeff - T.lam * cs.terms[i].coeff));
    R.checks.push_back(check("pairing.sigma_variant", "sigma-substituted cycle is lambda times the S-form", lin, 1e-12));
    double dl = 0;
    for (int i = 0; i < 10; ++i)
      dl = std::max(dl, derivative_lemma_residual(rnd_c(g, 0.3), rnd_c(g), rnd_c(g), T.M));
    R.checks.push_back(check("pairing.derivative_lemma", "derivative of theta1^2/(b1 theta1^2 + b2 theta2^2)", dl, 1e-10));
  } catch (const std::exception& e) {
    R.checks.push_back(check("error", "exception in pairing extras", INFINITY, 0, e.what()));
  }
  R.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return R;
}

VerificationReport run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  std::vector<int> crits;
  bool tx = false, px = false;
  if (name == "theta") crits = {1};
  else if (name == "minors") crits = {2};
  else if (name == "variety") crits = {3, 5};
  else if (name == "elliptic") crits = {4, 10};
  else if (name == "torus") crits = {6}, tx = true;
  else if (name == "pairing") crits = {7, 8, 9}, px = true;
  else if (name == "all") crits = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, tx = px = true;
  else throw Error(ErrKind::Usage, "unknown suite '" + name + "'");
  auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = name;
  for (int k : crits) rep.groups.push_back(run_criterion(k, cfg));
  if (tx) rep.groups.push_back(torus_extras(cfg));
  if (px) rep.groups.push_back(pairing_extras(cfg));
  rep.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
  return rep;
}

}  // namespace ncs
