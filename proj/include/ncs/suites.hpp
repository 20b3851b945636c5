#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace ncs {

struct RunConfig {
  double eps = 1e-14;
  int u_nodes = 256;
  int m_nodes = 10;
  int quadrature_nodes = 512;
  std::uint64_t seed = 20261014;
  std::string output_format = "json";
  void validate() const;  // counts >= 16 (m_nodes >= 4), eps in (0, 1e-6]
};

struct CheckResult {
  std::string id;
  std::string paper_ref;  // descriptive label of the identity
  double residual = 0;
  double tolerance = 0;
  bool pass = false;  // residual < tolerance
  std::string note;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0, budget = 0;
  bool pass() const;
};

struct VerificationReport {
  std::string suite;
  std::vector<CriterionResult> groups;
  double wall_time = 0;
  bool all_pass() const;
};

const std::vector<std::string>& suite_names();
// the ten acceptance criteria, 1..10
CriterionResult run_criterion(int k, const RunConfig& cfg);
// module-level extras beyond the criteria, grouped under number 0
CriterionResult torus_extras(const RunConfig& cfg);
CriterionResult pairing_extras(const RunConfig& cfg);
VerificationReport run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace ncs
