#pragma once
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "ncs/elliptic.hpp"
#include "ncs/theta.hpp"

namespace ncs {

// value with d/du and d/dm channels; nan marks an unavailable channel
struct Jet {
  cd v = 0, du = 0, dm = 0;
};

class CoeffNode;
using CoeffFn = std::shared_ptr<const CoeffNode>;

class CoeffNode {
 public:
  virtual ~CoeffNode() = default;
  virtual Jet eval(cd u) const = 0;
};

CoeffFn cf_const(cd c);
// leaf wrapping a jet-valued function, results cached per evaluation point
CoeffFn cf_leaf(std::function<Jet(cd)> f);
CoeffFn cf_add(CoeffFn a, CoeffFn b);
CoeffFn cf_mul(CoeffFn a, CoeffFn b);
CoeffFn cf_scale(CoeffFn a, cd c);
CoeffFn cf_shift(CoeffFn a, cd s);  // u -> f(u + s)
CoeffFn cf_conj(CoeffFn a);         // u -> conj(f(conj u))
CoeffFn cf_du(CoeffFn a);           // derivative channel promoted to value
CoeffFn cf_dm(CoeffFn a);           // m-channel promoted to value

struct NCTElement {
  double eta = 0;
  int max_degree = 16;
  std::map<int, CoeffFn> terms;

  static NCTElement scalar(double eta, cd c);
  static NCTElement monomial(double eta, int n, CoeffFn f);
  NCTElement operator+(const NCTElement& b) const;
  NCTElement operator-(const NCTElement& b) const;
  NCTElement operator*(const NCTElement& b) const;
  NCTElement scaled(cd c) const;
  NCTElement adjoint() const;
  cd coeff(int n, cd u) const;  // 0 when the degree is absent
};

cd trace_chi(const NCTElement& a, int nodes = 256);
NCTElement derivation(int k, const NCTElement& a);  // k = 2 (d/du) or 3 (2 pi i n)
NCTElement derivation_m(const NCTElement& a);        // generators only, needs the m channel

// residual helpers, max over uniform nodes and over every degree present
double element_sup(const NCTElement& a, int nodes = 256);
double element_distance(const NCTElement& a, const NCTElement& b, int nodes = 256);

struct TorusParams {
  ModularParam M;
  double eta = 0;
  double m = 0;
};
TorusParams torus_params(cd tau, double eta, double m, double eps = 1e-14);

// c d(u) = theta3 theta4(u) + i theta1 theta2(u); this returns c d
Jet dfun(cd u, const ModularParam& M);
NCTElement make_generator(int mu, const TorusParams& P);
NCTElement generator_dm(int mu, const TorusParams& P);

struct GeneratorSet {
  TorusParams P;
  std::array<NCTElement, 4> S, dS;  // rho(S_mu) and its m-derivative
  cd C1 = 0, C2 = 0;
  std::array<cd, 3> J{};  // J23, J31, J12 from theta values
  std::array<cd, 3> j{}, jt{};
  cd sigma = 0, dsigma = 0;  // normalization and its m-derivative
  bool normalized = false;
};

GeneratorSet generators(const TorusParams& P);
std::array<cd, 3> sklyanin_J(const TorusParams& P);
std::array<cd, 3> sklyanin_j(const TorusParams& P);
std::array<cd, 3> sklyanin_jt(const TorusParams& P);
std::array<cd, 2> casimir_values(const TorusParams& P);

// the six commutation residuals, relative to the size of the terms
std::array<double, 6> relation_residuals(const GeneratorSet& G, int nodes = 256);
double self_adjoint_residual(const NCTElement& a, int nodes = 256);
std::array<double, 2> casimir_residuals(const GeneratorSet& G, int nodes = 256);

// sigma(m) from (prod sin phi)^{1/2} (C1 - lambda C2)^{-1/2}, rho~ = sigma rho
GeneratorSet normalized_generators(const TorusParams& P, const PhiPoint& phi, cd lam);
double sphere_residual(const GeneratorSet& G, const PhiPoint& phi, int nodes = 256);
// Q2 in x coordinates against lambda C2
double q2_center_residual(const GeneratorSet& G, const PhiPoint& phi, cd lam, int nodes = 256);

// L(u) = i theta1 theta2(eta) psi1(u) + theta3 theta4(eta) psi3(u) with psi at (tau, eta)
struct SimplifiedData {
  EllipticTriple T;
  std::array<NCTElement, 4> Y;
  CoeffFn L, Lbar;
  cd nu = 0;
};
SimplifiedData simplified_generators(const TorusParams& P);
// rho(S_mu)/gamma against (d Y2, i Y3, d Y0, -Y1)
std::array<double, 4> equivalence_residuals(const GeneratorSet& G, const SimplifiedData& D,
                                            int nodes = 256);
// nu L Lbar against Q(Z, Z') with Z = psi(u - im/2), Z' = eps psi(u + im/2)
double lemrho2_residual(const SimplifiedData& D, const TorusParams& P, int nodes = 256);
// (L^{-1} V*)(V Lbar^{-1}) against nu / Q(Z, Z')
double ww_rule_residual(const SimplifiedData& D, const TorusParams& P, int nodes = 256);
// Z(u - eta) = sigma Z(u) and Z'(u - eta) = sigma^{-1} Z'(u)
double cross_rule_residual(const SimplifiedData& D, const TorusParams& P, int nodes = 64);
// scalar delta with rho(Y) = delta (Z W~ + W~' Z') where W~ W~' = 1/Q
struct DeltaFit {
  cd delta = 0;
  double spread = 0;  // relative variation over mu and nodes
};
DeltaFit measure_delta(const SimplifiedData& D, const TorusParams& P, int nodes = 64);

}  // namespace ncs
