#include <cmath>

#include "ncs/charvar.hpp"

namespace ncs {

namespace {

cd rnd(std::mt19937_64& g) {
  std::normal_distribution<double> n(0.0, 1.0);
  double a = n(g);
  double b = n(g);
  return {a, b};
}

Component point(const std::string& name, Vec4 v, Role r) {
  return {name, [v, r](std::mt19937_64&) { return ProjPoint(v, r); }};
}

// a line given by two free parameters s, t
Component line(const std::string& name, std::function<Vec4(cd, cd)> f, Role r) {
  return {name, [f, r](std::mt19937_64& g) {
            cd s = rnd(g), t = rnd(g);
            return ProjPoint(f(s, t), r);
          }};
}

// sum z^2 = 0 cut by z_a = w z_b
Component conic(const std::string& name, int a, int b, cd w) {
  return {name, [a, b, w](std::mt19937_64& g) {
            int o[2], n = 0;
            for (int i = 0; i < 4; ++i)
              if (i != a && i != b) o[n++] = i;
            Vec4 z{};
            z[b] = rnd(g);
            z[a] = w * z[b];
            z[o[0]] = rnd(g);
            z[o[1]] = I * std::sqrt(z[a] * z[a] + z[b] * z[b] + z[o[0]] * z[o[0]]);
            return ProjPoint(z, Role::Z);
          }};
}

Component whole_space(const std::string& name) {
  return {name, [](std::mt19937_64& g) {
            return ProjPoint(Vec4{rnd(g), rnd(g), rnd(g), rnd(g)}, Role::x);
          }};
}

}  // namespace

CaseLoci case_loci(CaseId id, std::mt19937_64& /*rng*/) {
  const double h = PI / 2;
  CaseLoci L;
  L.id = id;
  switch (id) {
    case CaseId::Generic: {
      L.phi = PhiPoint(1.1, 0.8, 0.4);
      SklyaninParams s = sklyanin_params(L.phi);
      L.src = s;
      cd A = (1.0 - s.gamma.v) / (1.0 + s.alpha.v), B = (1.0 + s.gamma.v) / (1.0 - s.beta.v);
      L.comps.push_back({"elliptic curve", [A, B](std::mt19937_64& g) {
                           Vec4 z{};
                           z[1] = rnd(g);
                           z[2] = rnd(g);
                           z[3] = I * std::sqrt(A * z[1] * z[1] + B * z[2] * z[2]);
                           z[0] = I * std::sqrt(z[1] * z[1] + z[2] * z[2] + z[3] * z[3]);
                           return ProjPoint(z, Role::Z);
                         }});
      for (int k = 0; k < 4; ++k) {
        Vec4 e{};
        e[k] = 1;
        L.comps.push_back(point("e" + std::to_string(k), e, Role::Z));
      }
      break;
    }
    case CaseId::EvenFace: {
      L.phi = PhiPoint(0.7, 0.7, 0.3);
      SklyaninParams s = sklyanin_params(L.phi);
      L.src = s;
      cd r = std::sqrt(cd(s.alpha.v));
      L.comps.push_back(point("e0", {1, 0, 0, 0}, Role::Z));
      L.comps.push_back(point("e3", {0, 0, 0, 1}, Role::Z));
      L.comps.push_back(line("line z0=z3=0", [](cd a, cd b) { return Vec4{0, a, b, 0}; }, Role::Z));
      L.comps.push_back(conic("conic z0=+sqrt(alpha) z3", 0, 3, r));
      L.comps.push_back(conic("conic z0=-sqrt(alpha) z3", 0, 3, -r));
      break;
    }
    case CaseId::OddFace: {
      L.phi = PhiPoint(h, 0.8, 0.3);
      SklyaninParams s = sklyanin_params(L.phi);
      L.src = s;
      cd r = std::sqrt(cd(s.beta.v));
      L.comps.push_back(point("e2", {0, 0, 1, 0}, Role::Z));
      L.comps.push_back(point("e3", {0, 0, 0, 1}, Role::Z));
      L.comps.push_back(line("line z2=z3=0", [](cd a, cd b) { return Vec4{a, b, 0, 0}; }, Role::Z));
      L.comps.push_back(conic("conic+ z2=+sqrt(beta) z3", 2, 3, r));
      L.comps.push_back(conic("conic- z2=-sqrt(beta) z3", 2, 3, -r));
      break;
    }
    case CaseId::LineL: {
      L.phi = PhiPoint(h, 0.6, 0.6);
      L.src = L.phi;
      L.comps.push_back(line("l1", [](cd a, cd b) { return Vec4{0, 0, a, b}; }, Role::x));
      L.comps.push_back(line("l2", [](cd a, cd b) { return Vec4{a, b, 0, 0}; }, Role::x));
      L.comps.push_back(line("l3", [](cd a, cd b) { return Vec4{a, a, b, -I * b}; }, Role::x));
      L.comps.push_back(line("l4", [](cd a, cd b) { return Vec4{a, a, b, I * b}; }, Role::x));
      L.comps.push_back(line("l5", [](cd a, cd b) { return Vec4{a, -a, b, I * b}; }, Role::x));
      L.comps.push_back(line("l6", [](cd a, cd b) { return Vec4{a, -a, b, -I * b}; }, Role::x));
      break;
    }
    case CaseId::LineLprime: {
      L.phi = PhiPoint(h, h, 0.6);
      L.src = L.phi;
      L.comps.push_back({"plane x3=0", [](std::mt19937_64& g) {
                           return ProjPoint(Vec4{rnd(g), rnd(g), rnd(g), 0}, Role::x);
                         }});
      L.comps.push_back(point("e3", {0, 0, 0, 1}, Role::x));
      break;
    }
    case CaseId::LineLsecond: {
      L.phi = PhiPoint(0.6, 0.6, 0.6);
      L.src = L.phi;
      L.comps.push_back({"plane x0=0", [](std::mt19937_64& g) {
                           return ProjPoint(Vec4{0, rnd(g), rnd(g), rnd(g)}, Role::x);
                         }});
      L.comps.push_back(point("e0", {1, 0, 0, 0}, Role::x));
      break;
    }
    case CaseId::Cplus: {
      L.phi = PhiPoint(0.6, 0.6, 0.0);
      L.src = L.phi;
      L.comps.push_back(line("l1", [](cd a, cd b) { return Vec4{0, a, b, 0}; }, Role::x));
      L.comps.push_back(line("l2", [](cd a, cd b) { return Vec4{a, 0, 0, b}; }, Role::x));
      L.comps.push_back(line("l3", [](cd a, cd b) { return Vec4{a, b, I * b, I * a}; }, Role::x));
      L.comps.push_back(line("l4", [](cd a, cd b) { return Vec4{a, b, -I * b, I * a}; }, Role::x));
      L.comps.push_back(line("l5", [](cd a, cd b) { return Vec4{a, b, I * b, -I * a}; }, Role::x));
      L.comps.push_back(line("l6", [](cd a, cd b) { return Vec4{a, b, -I * b, -I * a}; }, Role::x));
      break;
    }
    case CaseId::Cminus: {
      L.phi = PhiPoint(h + 0.3, h, 0.3);
      L.src = L.phi;
      L.comps.push_back(line("l1", [](cd a, cd b) { return Vec4{0, a, 0, b}; }, Role::x));
      L.comps.push_back(line("l2", [](cd a, cd b) { return Vec4{a, 0, b, 0}; }, Role::x));
      L.comps.push_back(line("l3", [](cd a, cd b) { return Vec4{a, b, a, b}; }, Role::x));
      L.comps.push_back(line("l4", [](cd a, cd b) { return Vec4{a, b, -a, -b}; }, Role::x));
      L.comps.push_back(line("l5", [](cd a, cd b) { return Vec4{a, b, a, -b}; }, Role::x));
      L.comps.push_back(line("l6", [](cd a, cd b) { return Vec4{a, b, -a, b}; }, Role::x));
      break;
    }
    case CaseId::VertexP:
      L.phi = PhiPoint(h, h, h);
      L.src = L.phi;
      L.comps.push_back(whole_space("P3"));
      break;
    case CaseId::VertexPprime:
      L.phi = PhiPoint(h, h, 0);
      L.src = L.phi;
      L.comps.push_back(whole_space("P3"));
      break;
    case CaseId::VertexO:
      L.phi = PhiPoint(0, 0, 0);
      L.src = L.phi;
      L.comps.push_back(whole_space("P3"));
      break;
  }
  return L;
}

}  // namespace ncs
