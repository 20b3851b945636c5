#pragma once
#include <array>
#include <functional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "ncs/moduli.hpp"
#include "ncs/proj.hpp"

namespace ncs {

struct CExt {
  cd v = 0;
  bool inf = false;
};

struct SklyaninParams {
  CExt alpha, beta, gamma;
  double constraint_residual() const;  // alpha+beta+gamma+alpha*beta*gamma when finite
};
SklyaninParams sklyanin_params(const PhiPoint& p);

using RelSource = std::variant<PhiPoint, SklyaninParams, ResolventTriple>;

// rows are the six relations, omega_i(p, p') = (R(p) p')_i
Mat64 relation_matrix(const RelSource& src, const ProjPoint& p);
std::array<cd, 15> minors15(const Mat64& m);
extern const std::array<std::array<int, 2>, 15> kMinorPairs;
std::array<cd, 15> appendix_minors(const PhiPoint& p, const Vec4& x);
cd sklyanin_first_minor(const SklyaninParams& s, const Vec4& z);
double max_entry(const Mat64& m);
bool is_on_variety(const RelSource& src, const ProjPoint& p, double tol = 1e-9);
double variety_defect(const RelSource& src, const ProjPoint& p);  // max|minor| / max|entry|^4

ProjPoint sigma_cubic(const ProjPoint& Z);
// general correspondence from the null vectors of the relation matrix
ProjPoint sigma_forward(const RelSource& src, const ProjPoint& p);
ProjPoint sigma_backward(const RelSource& src, const ProjPoint& p);
ProjPoint sigma_sklyanin(const SklyaninParams& s, const ProjPoint& z);

enum class Involution { I, I0, I1, I2, I3, Mhalf };
ProjPoint involution(Involution k, const ProjPoint& p);
Vec4 apply_M(const Vec4& v);

enum class QLabel { Q1_sphere, Q2, Qm, Q_x, Q_YZ, P, Pprime, Qprime, custom };
struct QuadraticForm {
  Mat4 m{};
  QLabel label = QLabel::custom;
  int index = 0;  // k for Qm
  double asymmetry() const;
};
QuadraticForm diag_form(const Vec4& d, QLabel l, int idx = 0);
QuadraticForm form_Q1_sphere();
QuadraticForm form_Q2(const PhiPoint& p);
QuadraticForm form_Qm(int m, const std::array<cd, 3>& J);  // J = (J23, J31, J12)
QuadraticForm form_Q(const PhiPoint& p);                   // Q in the Y/Z frame
QuadraticForm form_P(const PhiPoint& p);
QuadraticForm form_Pprime(const PhiPoint& p);
QuadraticForm form_Qprime(const PhiPoint& p);
cd quadratic_form_eval(const QuadraticForm& Q, const ProjPoint& Z, const ProjPoint& Zp);
int stacked_rank(const std::vector<QuadraticForm>& forms, double tol = 1e-10);

struct CentralityResult {
  double residual = 0;
  bool degenerate = false;  // Q vanishes on both pairs
};
CentralityResult centrality_residual(const QuadraticForm& Q, const RelSource& src,
                                     const ProjPoint& Z, const ProjPoint& Zp);

enum class Basis { y_to_Y, x_to_Y, Z_of_u, u_of_Z };
ProjPoint change_basis(Basis dir, const ProjPoint& p, const PhiPoint& phi);
std::array<cd, 4> rho_xtoY(const PhiPoint& phi);  // rho_mu with x = rho Y

// geometric data table
struct Component {
  std::string name;
  std::function<ProjPoint(std::mt19937_64&)> sample;
};
struct CaseLoci {
  CaseId id;
  PhiPoint phi;
  RelSource src;
  std::vector<Component> comps;
};
CaseLoci case_loci(CaseId id, std::mt19937_64& rng);

}  // namespace ncs
