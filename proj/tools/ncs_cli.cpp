// ncs: classify a phi point, run verification suites, tabulate the volume form
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ncs/elliptic.hpp"
#include "ncs/moduli.hpp"
#include "ncs/pairing.hpp"
#include "ncs/suites.hpp"

using json = nlohmann::ordered_json;
using namespace ncs;

namespace {

// exit codes by error kind
int exit_code(ErrKind k) {
  switch (k) {
    case ErrKind::Usage:
    case ErrKind::Config: return 2;
    case ErrKind::Classification: return 3;
    default: return 4;
  }
}

std::string trim(std::string s) {
  auto a = s.find_first_not_of(" \t\r");
  auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// key = value lines, '#' starts a comment
void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrKind::Config, "cannot open config file " + path);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrKind::Config, path + ":" + std::to_string(ln) + ": expected key=value");
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    try {
      if (k == "eps") cfg.eps = std::stod(v);
      else if (k == "nodes" || k == "u_nodes") cfg.u_nodes = std::stoi(v);
      else if (k == "m_nodes") cfg.m_nodes = std::stoi(v);
      else if (k == "quadrature_nodes") cfg.quadrature_nodes = std::stoi(v);
      else if (k == "seed") cfg.seed = std::stoull(v);
      else if (k == "format") cfg.output_format = v;
      else throw Error(ErrKind::Config, path + ":" + std::to_string(ln) + ": unknown key '" + k + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrKind::Config, path + ":" + std::to_string(ln) + ": bad value for " + k);
    }
  }
}

PhiPoint parse_phi(const std::string& s) {
  std::stringstream ss(s);
  std::string tok;
  std::vector<double> v;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (trim(tok.substr(used)) != "") throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrKind::Usage, "--phi expects three comma-separated numbers");
    }
  }
  if (v.size() != 3) throw Error(ErrKind::Usage, "--phi expects three comma-separated numbers");
  return PhiPoint(v[0], v[1], v[2]);
}

json ext_json(const Ext& e) {
  if (e.kind == Ext::Finite) return e.v;
  return e.str();
}

json classify_json(const PhiPoint& p) {
  CaseLabel L = classify(p);
  TrigInvariants t = trig_invariants(p);
  json j;
  j["phi"] = {p[0], p[1], p[2]};
  j["case"] = case_name(L.case_id);
  j["case_number"] = case_number(L.case_id);
  if (L.has_witness) j["weyl_witness"] = L.witness.str();
  j["in_A"] = in_A(p);
  j["in_B"] = in_B(p);
  for (int k = 0; k < 3; ++k) {
    j["s"].push_back(ext_json(t.s[k]));
    j["t"].push_back(ext_json(t.t[k]));
    j["J"].push_back(ext_json(t.J[k]));
  }
  j["Lambda"] = ext_json(t.Lambda);
  j["even_generic"] = is_even_generic(p);
  return j;
}

json report_json(const VerificationReport& r, bool timing) {
  json j;
  j["suite"] = r.suite;
  j["pass"] = r.all_pass();
  for (const auto& g : r.groups) {
    json G;
    G["criterion"] = g.number;
    G["title"] = g.title;
    G["pass"] = g.pass();
    if (timing) {
      G["seconds"] = g.seconds;
      G["budget"] = g.budget;
    }
    for (const auto& c : g.checks) {
      json C;
      C["id"] = c.id;
      C["paper_ref"] = c.paper_ref;
      C["residual"] = c.residual;
      C["tolerance"] = c.tolerance;
      C["pass"] = c.pass;
      if (!c.note.empty()) C["note"] = c.note;
      G["checks"].push_back(C);
    }
    j["groups"].push_back(G);
  }
  if (timing) j["wall_time"] = r.wall_time;
  return j;
}

std::string report_csv(const VerificationReport& r) {
  std::ostringstream o;
  o << "criterion,id,residual,tolerance,pass\n";
  char buf[64];
  for (const auto& g : r.groups)
    for (const auto& c : g.checks) {
      std::snprintf(buf, sizeof buf, "%.6e,%.3e", c.residual, c.tolerance);
      o << g.number << "," << c.id << "," << buf << "," << (c.pass ? 1 : 0) << "\n";
    }
  return o.str();
}

std::string jacobian_csv(const PhiPoint& p, const RunConfig& cfg) {
  if (!is_even_generic(p)) throw Error(ErrKind::Classification, "jacobian needs a generic phi with all angles in (0, pi/2)");
  PhiPoint ph = even_frame(p);
  EllipticTriple T = elliptic_triple(ph, cfg.eps);
  JacobianData J = period_Omega(ph, T, cfg.quadrature_nodes);
  std::ostringstream o;
  o << "m,D,g,ratio,R,dR,Omega\n";
  double Tm = T.M.tau.imag();
  char buf[256];
  for (int j = 0; j < cfg.m_nodes; ++j) {
    double m = Tm * (0.05 + 0.9 * j / double(cfg.m_nodes - 1));
    OmegaData od = omega_density(m, ph, T, cfg.u_nodes);
    cd R = R_of_m(m, ph, T), dR = dR_of_m(m, ph, T);
    std::snprintf(buf, sizeof buf, "%.10f,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", m, od.D.real(), od.g.real(),
                  (od.D / od.g).real(), R.real(), dR.real(), J.Omega.real());
    o << buf;
  }
  return o.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(ErrKind::Config, "cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sklyanin algebra moduli, representations and pairings"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string phi_s, suite = "all", out, format;
  double eps = 0;
  int nodes = 0;
  long long seed = -1;
  bool timing = false;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--eps", eps, "truncation tolerance of the theta series");
    c->add_option("--nodes", nodes, "quadrature nodes in u");
    c->add_option("--seed", seed, "random seed");
    c->add_option("--format", format, "json or csv");
    c->add_option("--out", out, "output file, default stdout");
  };
  auto* cls = app.add_subcommand("classify", "case label and invariants of a phi point");
  cls->add_option("--phi", phi_s, "phi1,phi2,phi3")->required();
  add_common(cls);
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", suite, "theta, minors, variety, elliptic, torus, pairing or all");
  ver->add_flag("--timing", timing, "include timings in the JSON report");
  add_common(ver);
  auto* jac = app.add_subcommand("jacobian", "table of D, g, R and dR over the m-grid");
  jac->add_option("--phi", phi_s, "phi1,phi2,phi3")->required();
  add_common(jac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (const char* c = std::getenv("NCS_CONFIG")) load_config(c, cfg);
    if (eps > 0) cfg.eps = eps;
    if (nodes > 0) cfg.u_nodes = nodes;
    if (seed >= 0) cfg.seed = std::uint64_t(seed);
    if (!format.empty()) cfg.output_format = format;
    cfg.validate();

    if (*cls) {
      json j = classify_json(parse_phi(phi_s));
      emit(j.dump(2) + "\n", out);
    } else if (*ver) {
      VerificationReport r = run_suite(suite, cfg);
      emit(cfg.output_format == "csv" ? report_csv(r) : report_json(r, timing).dump(2) + "\n", out);
      return r.all_pass() ? 0 : 1;
    } else if (*jac) {
      emit(jacobian_csv(parse_phi(phi_s), cfg), out);
    }
  } catch (const Error& e) {
    std::cerr << "ncs: " << e.what() << "\n";
    return exit_code(e.kind);
  } catch (const std::exception& e) {
    std::cerr << "ncs: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
