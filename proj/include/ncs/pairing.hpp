#pragma once
#include <array>
#include <vector>

#include "ncs/elliptic.hpp"
#include "ncs/nctorus.hpp"

namespace ncs {

enum class CycleVariant { x, S, sigma };

struct CycleTerm {
  cd coeff = 0;
  std::array<int, 4> idx{};
};

struct ChernCycle {
  CycleVariant variant = CycleVariant::x;
  std::vector<CycleTerm> terms;
};

// Levi-Civita sign of a 4-tuple in {0..3}, 0 on repeats
int eps4(const std::array<int, 4>& a);

// x: ch itself; S: Lambda ch in the S_mu; sigma: S with s_k replaced by lam s_k
ChernCycle chern_cycle(const PhiPoint& phi, CycleVariant v, cd lam = 1.0);
// sum eps (n..)(w..) S (x) S (x) S (x) S - 2i sum (-1)^{n_mu - n_nu}(w_mu - w_nu) S_mu S_nu S_mu S_nu
ChernCycle weighted_cycle(const std::array<cd, 4>& w);
// cos(phi_a - phi_b + phi_c - phi_d)/prod cos = (n..)(s..) over all 24 index tuples
double ending1_residual(const PhiPoint& phi);
// x-variant pushed through x = S/lambda_mu against Lambda^{-1} S-variant, termwise
double cycle_scaling_residual(const PhiPoint& phi);

// slot images of the four generators under delta_1 (supplied), delta_2, delta_3
struct SlotImages {
  std::array<NCTElement, 4> a;
  std::array<std::array<NCTElement, 4>, 3> d;  // d[i][mu] = delta_{i+1}(a_mu)
};
SlotImages slot_images(const std::array<NCTElement, 4>& S, const std::array<NCTElement, 4>& dS);

// sum eps_ijk chi(a0 delta_i(a1) delta_j(a2) delta_k(a3))
cd cocycle_tau(const SlotImages& im, const std::array<int, 4>& idx, int nodes = 256);
// total over the terms; rotate = true uses -tau on the cyclically rotated tuple
cd pair_cycle(const ChernCycle& c, const SlotImages& im, int nodes = 256, bool rotate = false);

// orientation sign, fixed once at (tau = 1.2i, eta = 0.3, m = 0.5)
int orientation_sign();

// raw pairing density with the theta sigmas of (0, theta_j^2(0)/theta_j^2(eta))
cd pairing_density(const TorusParams& P, int nodes = 256);
cd pairing_density(const GeneratorSet& G, int nodes = 256);
cd g_closed(const TorusParams& P);
std::array<cd, 4> theta_sigmas(const TorusParams& P);

// Lambda = prod tan phi_j cos(phi_k - phi_l)
double Lambda_of(const PhiPoint& phi);

struct OmegaData {
  cd omega = 0;         // -sigma^4 D/(lambda Lambda)
  cd direct = 0;        // pairing of Lambda^{-1} (S-variant) with rho~ generators
  cd D = 0, g = 0, sigma4 = 0;
};
OmegaData omega_density(double m, const PhiPoint& phi, const EllipticTriple& T, int nodes = 256,
                        bool with_direct = false);
// contribution of the sigma'(m) rho(S) terms, relative to |D|
double resder_residual(const TorusParams& P, int nodes = 256);

struct VolPoint {
  double m = 0;
  cd omega = 0, rhs = 0;
  double residual = 0;
  bool indeterminate = false;
};
VolPoint vol_residual(double m, const PhiPoint& phi, const EllipticTriple& T, const JacobianData& J,
                      int nodes = 256);
// int_a^b omega dm against 6 pi Omega (R(b) - R(a)), composite Gauss-Legendre in m
struct VolIntegral {
  cd lhs = 0, rhs = 0;
  double abs_mass = 0;  // int_a^b |omega| dm
  double residual = 0;
};
VolIntegral vol_integral(const PhiPoint& phi, const EllipticTriple& T, const JacobianData& J,
                         double a, double b, int gauss = 12, int panels = 2, int nodes = 256);

// both sides of the derivative lemma at u for constants b1, b2
double derivative_lemma_residual(cd u, cd b1, cd b2, const ModularParam& M);
// C1 - lambda C2 against b1 theta1^2(im) + b2 theta2^2(im)
double c1c2_residual(double m, const PhiPoint& phi, const EllipticTriple& T);

struct RatioResidual {
  double rat1 = 0, rat2 = 0;
  double rat2_printed_b = 0;  // same identity with b = sin phi2 sin phi3 / cos(phi2 - phi3)
};
// Z on F_phi(0), i.e. conj(Z) = I0(Z) projectively, on the fiber of s
RatioResidual ratio_identity_residual(const ProjPoint& Z, const PhiPoint& phi);

}  // namespace ncs
