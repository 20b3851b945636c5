#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = 0;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " \"" NCS_CLI_PATH "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("classify prints the case label") {
  Run r = run("classify --phi 1.1,0.8,0.4");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == "Generic");
  CHECK(j["s"].size() == 3);
}

TEST_CASE("bad input exits with usage codes") {
  CHECK(run("classify --phi 1.1,0.8").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("verify --suite theta --eps 0.5").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("verify is deterministic without timing") {
  Run a = run("verify --suite theta"), b = run("verify --suite theta");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["pass"] == true);
  CHECK_FALSE(j.contains("wall_time"));
  Run t = run("verify --suite theta --timing");
  CHECK(nlohmann::json::parse(t.out).contains("wall_time"));
}

TEST_CASE("config file with flag override") {
  std::string path = "ncs_test_config.txt";
  {
    std::ofstream f(path);
    f << "# test\nformat = csv\nseed = 5\n";
  }
  Run c = run("verify --suite minors", "NCS_CONFIG=" + path);
  CHECK(c.code == 0);
  CHECK(c.out.rfind("criterion,id,residual", 0) == 0);
  Run j = run("verify --suite minors --format json", "NCS_CONFIG=" + path);
  CHECK(j.out[0] == '{');
  {
    std::ofstream f(path);
    f << "bogus = 1\n";
  }
  CHECK(run("verify --suite minors", "NCS_CONFIG=" + path).code == 2);
  std::remove(path.c_str());
}

TEST_CASE("jacobian table and classification error") {
  Run r = run("jacobian --phi 1.1,0.8,0.4 --nodes 64");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("m,D,g,ratio,R,dR,Omega\n", 0) == 0);
  int lines = 0;
  for (char ch : r.out) lines += ch == '\n';
  CHECK(lines == 11);
  CHECK(run("jacobian --phi 0.7,0.7,0.3").code == 3);
}
