#include "ncs/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ncs {

const char* err_name(ErrKind k) {
  switch (k) {
    case ErrKind::Config: return "config";
    case ErrKind::Degenerate: return "degenerate";
    case ErrKind::Numeric: return "numeric";
    case ErrKind::Pole: return "pole";
    case ErrKind::Usage: return "usage";
    case ErrKind::Singular: return "singular";
    case ErrKind::Regime: return "regime";
    case ErrKind::Classification: return "classification";
    case ErrKind::Precondition: return "precondition";
    case ErrKind::Capacity: return "capacity";
    case ErrKind::Branch: return "branch";
  }
  return "error";
}

ModularParam ModularParam::make(cd tau, double eps, int n_trunc) {
  if (!(tau.imag() > 0)) throw Error(ErrKind::Config, "Im(tau) must be positive");
  ModularParam M;
  M.tau = tau;
  M.q = std::exp(I * PI * tau);
  M.eps = eps;
  if (n_trunc <= 0) {
    double lq = std::log(std::abs(M.q));
    n_trunc = int(std::ceil(std::sqrt(std::log(eps) / lq))) + 2;
  }
  M.n_trunc = n_trunc;
  M.validate();
  return M;
}

void ModularParam::validate() const {
  if (!(tau.imag() > 0)) throw Error(ErrKind::Config, "Im(tau) must be positive");
  // |q|^(n^2) < eps, done in log form so it cannot underflow
  double lq = -PI * tau.imag();
  if (lq * double(n_trunc) * double(n_trunc) >= std::log(eps))
    throw Error(ErrKind::Config, "series cutoff too small for eps");
}

Theta4 theta_all(cd z, const ModularParam& M, int d) {
  // sum centred where |q^{n^2} e^{2 pi i n z}| peaks
  double nstar = -z.imag() / M.tau.imag();
  int lo = int(std::floor(nstar)) - M.n_trunc - 1;
  int hi = int(std::ceil(nstar)) + M.n_trunc + 1;
  cd s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (int n = lo; n <= hi; ++n) {
    double sg = (n % 2 == 0) ? 1.0 : -1.0;
    double fn = n;
    cd e = std::exp(I * PI * (M.tau * (fn * fn) + 2.0 * fn * z));
    if (d > 0) e *= std::pow(I * (2 * PI * fn), d);
    s3 += e;
    s4 += sg * e;
    double h = n + 0.5;
    cd eh = std::exp(I * PI * (M.tau * (h * h) + 2.0 * h * z));
    if (d > 0) eh *= std::pow(I * (2 * PI * h), d);
    s2 += eh;
    s1 += -I * sg * eh;
  }
  return Theta4{{s1, s2, s3, s4}};
}

cd theta(int j, cd z, const ModularParam& M, int d) {
  if (j < 1 || j > 4) throw Error(ErrKind::Usage, "theta index must be in 1..4");
  return theta_all(z, M, d)[j];
}

cd theta_dz(int j, cd z, const ModularParam& M) { return theta(j, z, M, 1); }

namespace {

// one factor of a relation: theta_j at slot k (0..7 = a,b,c,d,w,x,y,z)
struct F {
  int j, k;
};
struct Prod {
  F f[4];
};
struct Rel {
  Prod l1;
  double sl;
  Prod l2;
  Prod r1;
  double sr;
  Prod r2;
};

enum { A_ = 0, B_, C_, D_, W_, X_, Y_, Z_ };

const Rel kRel[16] = {
    {{{{2, A_}, {2, B_}, {2, C_}, {2, D_}}}, 1, {{{3, A_}, {3, B_}, {3, C_}, {3, D_}}},
     {{{2, X_}, {2, Y_}, {2, Z_}, {2, W_}}}, 1, {{{3, X_}, {3, Y_}, {3, Z_}, {3, W_}}}},
    {{{{3, A_}, {3, B_}, {3, C_}, {3, D_}}}, -1, {{{2, A_}, {2, B_}, {2, C_}, {2, D_}}},
     {{{1, X_}, {1, Y_}, {1, Z_}, {1, W_}}}, 1, {{{4, X_}, {4, Y_}, {4, Z_}, {4, W_}}}},
    {{{{1, A_}, {1, B_}, {1, C_}, {1, D_}}}, 1, {{{4, A_}, {4, B_}, {4, C_}, {4, D_}}},
     {{{3, W_}, {3, X_}, {3, Y_}, {3, Z_}}}, -1, {{{2, W_}, {2, X_}, {2, Y_}, {2, Z_}}}},
    {{{{4, A_}, {4, B_}, {4, C_}, {4, D_}}}, -1, {{{1, A_}, {1, B_}, {1, C_}, {1, D_}}},
     {{{4, W_}, {4, X_}, {4, Y_}, {4, Z_}}}, -1, {{{1, W_}, {1, X_}, {1, Y_}, {1, Z_}}}},
    {{{{1, A_}, {1, B_}, {2, C_}, {2, D_}}}, 1, {{{3, C_}, {3, D_}, {4, A_}, {4, B_}}},
     {{{1, X_}, {1, W_}, {2, Y_}, {2, Z_}}}, 1, {{{3, Y_}, {3, Z_}, {4, X_}, {4, W_}}}},
    {{{{4, A_}, {4, B_}, {3, C_}, {3, D_}}}, -1, {{{1, A_}, {1, B_}, {2, C_}, {2, D_}}},
     {{{1, Y_}, {1, Z_}, {2, X_}, {2, W_}}}, 1, {{{3, X_}, {3, W_}, {4, Y_}, {4, Z_}}}},
    {{{{1, A_}, {1, B_}, {3, C_}, {3, D_}}}, 1, {{{2, C_}, {2, D_}, {4, A_}, {4, B_}}},
     {{{1, X_}, {1, W_}, {3, Y_}, {3, Z_}}}, 1, {{{2, Y_}, {2, Z_}, {4, X_}, {4, W_}}}},
    {{{{4, A_}, {4, B_}, {2, C_}, {2, D_}}}, -1, {{{1, A_}, {1, B_}, {3, C_}, {3, D_}}},
     {{{1, Y_}, {1, Z_}, {3, X_}, {3, W_}}}, 1, {{{2, X_}, {2, W_}, {4, Y_}, {4, Z_}}}},
    {{{{2, C_}, {2, D_}, {3, A_}, {3, B_}}}, 1, {{{2, A_}, {2, B_}, {3, C_}, {3, D_}}},
     {{{2, X_}, {2, W_}, {3, Y_}, {3, Z_}}}, 1, {{{2, Y_}, {2, Z_}, {3, X_}, {3, W_}}}},
    {{{{3, A_}, {3, B_}, {2, C_}, {2, D_}}}, -1, {{{2, A_}, {2, B_}, {3, C_}, {3, D_}}},
     {{{1, X_}, {1, W_}, {4, Y_}, {4, Z_}}}, 1, {{{1, Y_}, {1, Z_}, {4, X_}, {4, W_}}}},
    {{{{1, C_}, {1, D_}, {4, A_}, {4, B_}}}, 1, {{{1, A_}, {1, B_}, {4, C_}, {4, D_}}},
     {{{3, W_}, {3, X_}, {2, Y_}, {2, Z_}}}, -1, {{{2, W_}, {2, X_}, {3, Y_}, {3, Z_}}}},
    {{{{4, A_}, {4, B_}, {1, C_}, {1, D_}}}, -1, {{{1, A_}, {1, B_}, {4, C_}, {4, D_}}},
     {{{4, W_}, {4, X_}, {1, Y_}, {1, Z_}}}, -1, {{{1, W_}, {1, X_}, {4, Y_}, {4, Z_}}}},
    {{{{2, C_}, {2, D_}, {3, A_}, {3, B_}}}, 1, {{{1, C_}, {1, D_}, {4, A_}, {4, B_}}},
     {{{2, Y_}, {2, Z_}, {3, X_}, {3, W_}}}, 1, {{{1, Y_}, {1, Z_}, {4, X_}, {4, W_}}}},
    {{{{3, A_}, {3, B_}, {2, C_}, {2, D_}}}, -1, {{{4, A_}, {4, B_}, {1, C_}, {1, D_}}},
     {{{2, X_}, {2, W_}, {3, Y_}, {3, Z_}}}, 1, {{{1, X_}, {1, W_}, {4, Y_}, {4, Z_}}}},
    {{{{1, D_}, {2, B_}, {3, A_}, {4, C_}}}, 1, {{{1, C_}, {2, A_}, {3, B_}, {4, D_}}},
     {{{1, W_}, {4, X_}, {2, Y_}, {3, Z_}}}, -1, {{{4, W_}, {1, X_}, {3, Y_}, {2, Z_}}}},
    {{{{3, A_}, {2, B_}, {4, C_}, {1, D_}}}, -1, {{{2, A_}, {3, B_}, {1, C_}, {4, D_}}},
     {{{3, W_}, {2, X_}, {4, Y_}, {1, Z_}}}, -1, {{{2, W_}, {3, X_}, {1, Y_}, {4, Z_}}}},
};

}  // namespace

double theta_relation_residual(int rel_id, cd a, cd b, cd c, cd d,
                               const ModularParam& M) {
  if (rel_id < 1 || rel_id > 16) throw Error(ErrKind::Usage, "relation id must be in 1..16");
  cd slot[8] = {a, b, c, d, 0.5 * (a + b + c + d), 0.5 * (a + b - c - d),
                0.5 * (a - b + c - d), 0.5 * (a - b - c + d)};
  Theta4 T[8];
  for (int k = 0; k < 8; ++k) T[k] = theta_all(slot[k], M);
  auto prod = [&](const Prod& p) {
    cd r = 1;
    for (auto& f : p.f) r *= T[f.k][f.j];
    return r;
  };
  const Rel& R = kRel[rel_id - 1];
  cd lhs = prod(R.l1) + R.sl * prod(R.l2);
  cd rhs = prod(R.r1) + R.sr * prod(R.r2);
  // scaled so that large theta values do not inflate the round-off floor
  double scale = std::max({1.0, std::abs(prod(R.l1)), std::abs(prod(R.l2)),
                           std::abs(prod(R.r1)), std::abs(prod(R.r2))});
  return std::abs(lhs - rhs) / scale;
}

cd lambda_of_tau(const ModularParam& M) {
  Theta4 t = theta_all(0.0, M);
  cd r = t[2] / t[3];
  return r * r * r * r;
}

cd reduce_gamma2(cd tau) {
  for (int it = 0; it < 200; ++it) {
    double x = tau.real();
    if (x > 1.0) {
      tau -= 2.0 * std::ceil((x - 1.0) / 2.0);
      continue;
    }
    if (x < -1.0) {
      tau += 2.0 * std::ceil((-1.0 - x) / 2.0);
      continue;
    }
    if (std::abs(tau - 0.5) < 0.5 - 1e-15) {
      tau = tau / (1.0 - 2.0 * tau);
      continue;
    }
    if (std::abs(tau + 0.5) < 0.5 - 1e-15) {
      tau = tau / (1.0 + 2.0 * tau);
      continue;
    }
    break;
  }
  return tau;
}

namespace {

double lam_imag_axis(double T, double eps) {
  return lambda_of_tau(ModularParam::make(cd(0, T), eps)).real();
}

// lam real in (0, 1/2]: tau = iT with lambda decreasing in T
ModularParam solve_imag_axis(double lam, double eps) {
  double lo = 0.9, hi = std::max(2.0, std::log(16.0 / lam) / PI + 2.0);
  while (lam_imag_axis(lo, eps) < lam) lo *= 0.8;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (lam_imag_axis(mid, eps) > lam) lo = mid;
    else hi = mid;
  }
  return ModularParam::make(cd(0, 0.5 * (lo + hi)), eps);
}

}  // namespace

ModularParam tau_of_lambda(cd lam, double eps) {
  if (std::abs(lam) < 1e-13 || std::abs(lam - 1.0) < 1e-13)
    throw Error(ErrKind::Degenerate, "lambda in {0,1} is a branch point");
  if (!std::isfinite(lam.real()) || !std::isfinite(lam.imag()))
    throw Error(ErrKind::Degenerate, "lambda = infinity is a branch point");
  double tol = 1e-12 * std::max(1.0, std::abs(lam));
  if (std::abs(lam.imag()) < 1e-15 && lam.real() > 0 && lam.real() < 1) {
    double l = lam.real();
    if (l <= 0.5) return solve_imag_axis(l, eps);
    // lambda(-1/tau) = 1 - lambda(tau), and -1/(iT) = i/T
    ModularParam Mp = solve_imag_axis(1.0 - l, eps);
    return ModularParam::make(cd(0, 1.0 / Mp.tau.imag()), eps);
  }
  // coarse table over the fundamental domain then damped Newton
  cd best = cd(0, 1);
  double bestr = std::numeric_limits<double>::infinity();
  for (int ix = -10; ix <= 10; ++ix)
    for (int iy = 1; iy <= 30; ++iy) {
      cd t(0.1 * ix, 0.1 * iy);
      if (std::abs(t - 0.5) < 0.5 || std::abs(t + 0.5) < 0.5) continue;
      double r = std::abs(lambda_of_tau(ModularParam::make(t, eps)) - lam);
      if (r < bestr) {
        bestr = r;
        best = t;
      }
    }
  cd t = best;
  double res = bestr;
  for (int it = 0; it < 100 && res > tol * 0.01; ++it) {
    ModularParam M = ModularParam::make(t, eps);
    Theta4 th0 = theta_all(0.0, M);
    cd l = lambda_of_tau(M);
    cd dl = I * PI * l * std::pow(th0[4], 4);
    cd step = (l - lam) / dl;
    double damp = 1.0;
    cd tn = t;
    double rn = res;
    for (int k = 0; k < 30; ++k) {
      tn = t - damp * step;
      if (tn.imag() > 0.02) {
        rn = std::abs(lambda_of_tau(ModularParam::make(tn, eps)) - lam);
        if (rn < res) break;
      }
      damp *= 0.5;
    }
    if (!(rn < res)) break;
    t = tn;
    res = rn;
  }
  t = reduce_gamma2(t);
  ModularParam M = ModularParam::make(t, eps);
  double fin = std::abs(lambda_of_tau(M) - lam);
  if (!(fin < tol))
    throw Error(ErrKind::Numeric, "lambda inversion did not converge, residual " +
                                      std::to_string(fin) + " at tau=" +
                                      std::to_string(t.real()) + "+" +
                                      std::to_string(t.imag()) + "i");
  return M;
}

cd p_ratio(cd z, const ModularParam& M) {
  Theta4 t0 = theta_all(0.0, M);
  Theta4 t = theta_all(z, M);
  double scale = std::max({std::abs(t[2]), std::abs(t[3]), std::abs(t[4])});
  if (std::abs(t[1]) < 1e3 * M.eps * scale) throw Error(ErrKind::Pole, "theta_1(z) vanishes");
  cd k = t0[2] * t0[2] / (t0[3] * t0[3]);
  return k * t[4] * t[4] / (t[1] * t[1]);
}

}  // namespace ncs
