#include "uce/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace uce;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "uce_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "uce_lab_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("algebra validation exit codes") {
  CHECK(cli({"algebra", "validate", "--family", "dual_numbers"}).code == kExitPass);
  CHECK(cli({"algebra", "validate", "--family", "no_such_family"}).code == kExitConfigError);

  const auto broken = scratch_dir() / "broken.json";
  std::ofstream(broken) << R"({"name": "broken", "char": 0, "dim": 2, "labels": ["1", "e"], "unit": ["1", "0"],)"
                        << R"( "mul": [[["1", "0"], ["0", "2"]], [["0", "1"], ["0", "0"]]]})";
  const auto r = cli({"algebra", "validate", "--file", broken.string()});
  CHECK(r.code == kExitMathFailure);
  CHECK(cli({"algebra", "validate", "--file", (scratch_dir() / "missing.json").string()}).code == kExitConfigError);
}

TEST_CASE("argument errors") {
  CHECK(cli({}).code == kExitConfigError);
  CHECK(cli({"frobnicate"}).code == kExitConfigError);
  CHECK(cli({"homology", "hh", "--format", "xml"}).code == kExitConfigError);
  CHECK(cli({"ext", "realize", "--m", "1", "--n", "1"}).code == kExitConfigError);
}

TEST_CASE("characteristic guard") {
  CHECK(cli({"ext", "realize", "--m", "2", "--n", "1", "--char", "3"}).code == kExitConfigError);
  const auto r = cli({"ext", "realize", "--m", "2", "--n", "1", "--char", "3", "--override-char-guard"});
  CHECK(r.code == kExitPass);
  CHECK(r.err.find("! hypothesis violated: m+n = 3 in characteristic 3") != std::string::npos);
}

TEST_CASE("homology and theorem reports") {
  const auto h = cli({"homology", "hh", "--family", "dual_numbers", "--degree", "1", "--format", "json"});
  REQUIRE(h.code == kExitPass);
  CHECK(nlohmann::json::parse(h.out)["homology"]["dim"] == 1);

  const auto t = cli({"ext", "verify-theorems", "--family", "dual_numbers", "--samples", "2", "--format", "json"});
  REQUIRE(t.code == kExitPass);
  const auto j = nlohmann::json::parse(t.out);
  CHECK(j["ker_psi"] == 1);
  CHECK(j["hh1"] == 1);

  CHECK(cli({"ext", "verify-relations", "--family", "truncated_poly(3)"}).code == kExitPass);
  CHECK(cli({"ext", "sample-universality", "--family", "dual_numbers", "--samples", "2"}).code == kExitPass);
}

TEST_CASE("report writes JSON and prints the table") {
  const auto path = scratch_dir() / "report.json";
  std::filesystem::remove(path);
  const auto r = cli({"report", "--family", "ground_field", "--samples", "1", "--output", path.string()});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("[PASS] ker_psi=hh1") != std::string::npos);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["char"] == 0);
  CHECK(j["checks"].is_array());
}
