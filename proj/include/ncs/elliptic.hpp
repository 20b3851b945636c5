#pragma once
#include <array>
#include <string>

#include "ncs/charvar.hpp"
#include "ncs/moduli.hpp"
#include "ncs/theta.hpp"

namespace ncs {

struct EllipticTriple {
  ModularParam M;
  cd eta = 0;
  cd lam = 0;                    // lambda * (a,b,c) = theta_j^2(0)/theta_j^2(eta)
  std::array<cd, 3> omega{};     // 1/2, (1+tau)/2, tau/2
  ResolventTriple abc{};
  bool flipped = false;          // eta replaced by its opposite to make sigma = shift by -eta
  double prop_residual = 0;      // proportionality residual of (a,b,c)
};

// (lambda(tau), p) from a resolvent triple
std::array<cd, 2> lambda_p(const ResolventTriple& t);
EllipticTriple elliptic_triple(const ResolventTriple& t, double eps = 1e-14);
EllipticTriple elliptic_triple(const PhiPoint& p, double eps = 1e-14);
// theta_j^2(0)/theta_j^2(eta), j = 2,3,4
std::array<cd, 3> sigma_vector(const EllipticTriple& T);
double proportionality_residual(const ResolventTriple& t, const std::array<cd, 3>& v);

// ascending representative of a generic phi with all angles in (0, pi/2)
PhiPoint even_frame(const PhiPoint& p);
bool is_even_generic(const PhiPoint& p);

// phi(z) = (theta_j(2z)/theta_j(eta)), psi(z) = phi(z - eta/2)
ProjPoint phiz(cd z, const EllipticTriple& T);
ProjPoint psi(cd z, const EllipticTriple& T);
Vec4 psi_raw(cd z, const EllipticTriple& T);
Vec4 psi_dz(cd z, const EllipticTriple& T);
double fiber_residual(const ProjPoint& Z, const ResolventTriple& t);

// p0..p3 and q0..q3, u-coordinates
ProjPoint special_point(const std::string& name);

struct JacobianData {
  cd Omega = 0;
  cd Omega_closed = 0;
  int k_index = 1;
  double c_k = 0, t_k = 0;
  int nodes = 0;
};
JacobianData period_Omega(const PhiPoint& phi, const EllipticTriple& T, int nodes = 512);
// (Z_k dZ0 - Z0 dZ_k)/(s_k Z_l Z_m), any k
cd chi_form(int k, const Vec4& Z, const Vec4& dZ, const std::array<double, 3>& s);

cd jacobian_R(const ProjPoint& Z, const PhiPoint& phi);
cd jacobian_J(const ProjPoint& Z, const PhiPoint& phi);
// Y-frame point (Z3, sqrt(J31) Z2, sqrt(-J23) Z1, sqrt(-J23 J31) Z0)
Vec4 jacobian_frame(const Vec4& Z, const PhiPoint& phi);

// F_phi(0) curve: Z(m) = theta_j(im)/theta_j(eta)
Vec4 curve_Z(double m, const EllipticTriple& T);
Vec4 curve_dZ(double m, const EllipticTriple& T);
// R(m) = R(frame(Z(m))) and its m-derivative by the chain rule
cd R_of_m(double m, const PhiPoint& phi, const EllipticTriple& T);
cd dR_of_m(double m, const PhiPoint& phi, const EllipticTriple& T);

// elliptic data of f_j(phi) against that of phi: a permutation of s(f_j phi) with the same
// lambda, then eta' = sign eta + (a + b tau)/2 with integers a, b
struct DualShift {
  std::array<int, 3> perm{};
  double lambda_gap = 0;     // |lambda' - lambda|
  double tau_gap = 0;        // Gamma(2)-reduced tau distance
  int sign = 1;
  std::array<int, 2> half{};  // (a, b), the half period (a + b tau)/2 mod L
  double residual = 0;        // distance of 2(eta' - sign eta) to the lattice point
};
DualShift duality_shift(const PhiPoint& phi, int j, double eps = 1e-14);

// u from a point of Y^2 = prod (X s_j - 1)
ProjPoint isoel(cd X, cd Y, const std::array<double, 3>& s);

}  // namespace ncs
