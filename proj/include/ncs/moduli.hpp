#pragma once
#include <array>
#include <string>
#include <vector>

#include "ncs/proj.hpp"

namespace ncs {

struct PhiPoint {
  std::array<double, 3> phi{};
  PhiPoint() = default;
  PhiPoint(double a, double b, double c);  // reduces into [0, pi)
  double operator[](int k) const { return phi[k]; }
};

double reduce_pi(double x);

// value that may legitimately be infinite (odd face has alpha = inf)
struct Ext {
  enum Kind { Finite, Infinite, Indeterminate } kind = Finite;
  double v = 0;
  static Ext fin(double x) { return {Finite, x}; }
  static Ext inf() { return {Infinite, 0}; }
  static Ext nan() { return {Indeterminate, 0}; }
  bool finite() const { return kind == Finite; }
  std::string str() const;
};

struct TrigInvariants {
  std::array<Ext, 3> t, s;
  double delta = 0;
  Ext Lambda;
  std::array<Ext, 3> J;      // J23, J31, J12
  std::array<Ext, 3> alpha;  // alpha_k = -J_lm
};

TrigInvariants trig_invariants(const PhiPoint& p);

struct ScaleFactors {
  std::array<cd, 4> lambda_mu{};
};
ScaleFactors scale_factors(const PhiPoint& p);
double scale_factor_residual(const PhiPoint& p, const ScaleFactors& sf);

enum class CaseId {
  Generic,
  EvenFace,
  OddFace,
  LineL,
  LineLprime,
  LineLsecond,
  Cplus,
  Cminus,
  VertexP,
  VertexPprime,
  VertexO
};
const char* case_name(CaseId c);
int case_number(CaseId c);  // 1..11 as in the geometric data table

// w acts by phi -> A phi mod pi
struct WeylElement {
  std::array<std::array<int, 3>, 3> A{};
  int index = -1;  // position in the fixed enumeration
  PhiPoint apply(const PhiPoint& p) const;
  std::string str() const;
};
const std::vector<WeylElement>& weyl_group();  // 24 elements, BFS order from identity

struct CaseLabel {
  CaseId case_id = CaseId::Generic;
  bool has_witness = false;
  WeylElement witness;
  int hits = 0, odd_hits = 0;
};
CaseLabel classify(const PhiPoint& p, double tol = 1e-10);
bool in_normal_form(CaseId c, const PhiPoint& p, double tol = 1e-10);
bool in_A(const PhiPoint& p, bool strict = false);
bool in_B(const PhiPoint& p, bool strict = false);

std::array<double, 3> flow_field(const PhiPoint& p);
// unreduced angles, so the trajectory stays continuous
std::array<double, 3> flow_integrate(std::array<double, 3> phi, double t, int steps);
PhiPoint flow_integrate(const PhiPoint& p, double t, int steps);

PhiPoint duality(int j, const PhiPoint& p);

// (d/dt) s_k / s_k along the flow against 4 prod sin phi_j, max over k
double s_scaling_residual(const PhiPoint& p);
// max |J(phi(t)) - J(phi)| / max(1, |J|) along an RK4 trajectory
double J_drift(const PhiPoint& p, double t, int steps);

struct ResolventTriple {
  cd a, b, c;
};
struct ResolventResult {
  ResolventTriple abc;
  std::array<cd, 3> J;  // J23, J31, J12
};
ResolventResult resolvent(const ProjPoint& u);
ResolventTriple resolvent_of_phi(const PhiPoint& p);  // (s1, s2, s3)

std::array<double, 3> rho_map(const std::array<double, 3>& s);    // (s_l - s_m)/s_k
std::array<double, 3> s_tilde(const std::array<double, 3>& s);    // (-s_k+s_l+s_m)/(s_l s_m)
std::array<double, 3> s_values(const PhiPoint& p);                // finite s, throws otherwise
std::array<double, 3> J_values(const PhiPoint& p);                // finite J, throws otherwise

}  // namespace ncs
