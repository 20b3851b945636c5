#pragma once
#include <complex>
#include <stdexcept>
#include <string>

namespace ncs {

using cd = std::complex<double>;
inline constexpr double PI = 3.14159265358979323846;
inline constexpr cd I{0.0, 1.0};

enum class ErrKind {
  Config,
  Degenerate,
  Numeric,
  Pole,
  Usage,
  Singular,
  Regime,
  Classification,
  Precondition,
  Capacity,
  Branch
};

const char* err_name(ErrKind k);

struct Error : std::runtime_error {
  ErrKind kind;
  Error(ErrKind k, const std::string& msg)
      : std::runtime_error(std::string(err_name(k)) + ": " + msg), kind(k) {}
};

struct ModularParam {
  cd tau;
  cd q;
  int n_trunc = 0;
  double eps = 1e-14;

  // n_trunc defaults to ceil(sqrt(ln eps / ln|q|)) + 2
  static ModularParam make(cd tau, double eps = 1e-14, int n_trunc = 0);
  void validate() const;
};

// j in 1..4, d = order of z-derivative
cd theta(int j, cd z, const ModularParam& M, int d = 0);
cd theta_dz(int j, cd z, const ModularParam& M);

// all four at once, index 0..3 holds theta_1..theta_4
struct Theta4 {
  cd v[4];
  cd operator[](int j) const { return v[j - 1]; }
};
Theta4 theta_all(cd z, const ModularParam& M, int d = 0);

double theta_relation_residual(int rel_id, cd a, cd b, cd c, cd d,
                               const ModularParam& M);

cd lambda_of_tau(const ModularParam& M);
// Gamma(2) fundamental domain: |Re tau| <= 1, |tau +- 1/2| >= 1/2
cd reduce_gamma2(cd tau);
ModularParam tau_of_lambda(cd lam, double eps = 1e-14);

cd p_ratio(cd z, const ModularParam& M);

}  // namespace ncs
