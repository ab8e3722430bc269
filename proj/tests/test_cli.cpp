#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
  const std::string cmd = std::string("\"") + GFTLAB_CLI + "\" " + args + " > " + stdout_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gftlab_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("bad flags and unknown names exit with the usage code") {
  CHECK(run("--no-such-flag") == 64);
  CHECK(run("integrate --map koebe") == 64);
  CHECK(run("integrate --map nonsense --p -1") == 64);
  CHECK(run("verify --suite unknown") == 64);
  CHECK(run("scan-weights --weight one --levels 13") == 64);
}

TEST_CASE("catalog lists labels with normalization data") {
  const auto out = scratch("catalog.txt");
  REQUIRE(run("catalog", out.string()) == 0);
  const auto text = slurp(out);
  CHECK(text.find("koebe") != std::string::npos);
  CHECK(text.find("parabolic:canonical") != std::string::npos);
  CHECK(text.find("f(0)") != std::string::npos);
}

TEST_CASE("integrate emits a JSON record that agrees with its Monte Carlo cross-check") {
  const auto report = scratch("integrate.json");
  const auto csv = scratch("integrate.csv");
  REQUIRE(run("integrate --map koebe --p -1 --mc --report " + report.string() + " --csv " + csv.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(report));
  REQUIRE(doc["cases"].size() == 1);
  const auto& c = doc["cases"][0];
  CHECK(c["converged"] == true);
  const double value = c["value"];
  const double mc = c["monte_carlo"]["value"];
  const double se = c["monte_carlo"]["standard_error"];
  CHECK(std::abs(value - mc) < 3.0 * se);
  CHECK(doc.contains("header"));
  CHECK(slurp(csv).rfind("map,p,value", 0) == 0);
}

TEST_CASE("divergent integrals are reported with markers, not as failures") {
  const auto report = scratch("divergent.json");
  REQUIRE(run("integrate --map koebe --p 0.7 --report " + report.string()) == 0);
  const auto doc = nlohmann::json::parse(slurp(report));
  CHECK(doc["cases"][0]["divergence_suspected"] == true);
}

TEST_CASE("weight scans and Loewner runs") {
  const auto scan = scratch("scan.json");
  REQUIRE(run("scan-weights --weight one --q 2,4 --levels 3 --report " + scan.string()) == 0);
  const auto s = nlohmann::json::parse(slurp(scan));
  CHECK(s.dump().find("sup_quotient") != std::string::npos);

  const auto chain = scratch("chain.json");
  REQUIRE(run("loewner --driver rot:omega=1 --z 0.4i --T 1 --dt 0.01 --p 0.5,1 --report " + chain.string()) == 0);
  CHECK(nlohmann::json::parse(slurp(chain)).dump().find("trajectory") != std::string::npos);
}

TEST_CASE("verify writes reports and reruns are identical") {
  const auto a = scratch("a.json"), b = scratch("b.json"), csv = scratch("a.csv");
  REQUIRE(run("verify --suite composition-bound --report " + a.string() + " --csv " + csv.string()) == 0);
  REQUIRE(run("verify --suite composition-bound --threads 2 --report " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(nlohmann::json::parse(slurp(a))["summary"]["exit_code"] == 0);
}
