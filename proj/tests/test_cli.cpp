#include "doctest.h"
#include "gtml/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = gtml::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("dim command") {
  auto r = run_cli({"dim", "--signature", "2,1,0"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["dim"] == "8");
}

TEST_CASE("paths command and the virtual vertex") {
  auto r = run_cli({"paths", "--from", "empty", "--to", "2,1,0"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["paths"] == "8");
  auto r2 = run_cli({"paths", "--from", "0", "--to", "1,0"});
  CHECK(json::parse(r2.out)["paths"] == "1");
}

TEST_CASE("link command") {
  auto r = run_cli({"link", "--signature", "1,0", "--to-level", "1"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["(0)"] == "1/2");
  CHECK(j["(1)"] == "1/2");
}

TEST_CASE("reldim command") {
  auto r = run_cli({"reldim", "--from", "1", "--to", "1,0"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["reldim"] == "1/2");
}

TEST_CASE("zw command") {
  auto r = run_cli({"zw", "--z", "1/2", "--z2", "1/2", "--w", "1/2", "--w2", "1/2",
                    "--N", "1", "--eps", "1e-4"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["level"] == 1);
  CHECK(j["masses"].contains("(0)"));
  double m0 = std::stod(j["masses"]["(0)"].get<std::string>());
  double m1 = std::stod(j["masses"]["(1)"].get<std::string>());
  CHECK(std::abs(m1 / m0 - 1.0 / 9.0) < 1e-9);
}

TEST_CASE("simulate command emits a deterministic CSV trajectory") {
  std::vector<std::string> args = {"simulate", "--z", "1/2", "--z2", "1/2", "--w", "1/2",
                                   "--w2", "1/2", "--N", "1", "--horizon", "5",
                                   "--seed", "42"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("time,state\n", 0) == 0);
  auto c = run_cli({"simulate", "--z", "1/2", "--z2", "1/2", "--w", "1/2", "--w2", "1/2",
                    "--N", "1", "--horizon", "5", "--seed", "43"});
  CHECK(a.out != c.out);
}

TEST_CASE("boundary command, exact row and coefficients") {
  auto r = run_cli({"boundary", "--N", "2", "--beta-plus", "1/2"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["complete"] == true);
  CHECK(j["masses"]["(1,0)"] == "1/2");
  CHECK(j["masses"]["(0,0)"] == "1/4");
  CHECK(j["masses"]["(1,1)"] == "1/4");

  auto c = run_cli({"boundary", "--beta-plus", "1/2", "--coeffs", "true",
                    "--window", "-2:3"});
  REQUIRE(c.code == 0);
  json cj = json::parse(c.out);
  CHECK(cj["method"] == "exact");
  CHECK(cj["coeffs"]["0"] == "1/2");
  CHECK(cj["coeffs"]["1"] == "1/2");
}

TEST_CASE("bouquet command") {
  auto r = run_cli({"bouquet", "--lambda", "1", "--mu", "1", "--ratio", "1/2",
                    "--schedule", "2,4,8"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["last"] == "1/2");
  CHECK(j["converged"] == true);
}

TEST_CASE("verify dims suite") {
  auto r = run_cli({"verify", "dims"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["suite"] == "dims");
  CHECK(j["pass"] == true);
  CHECK(r.err.find("PASS") != std::string::npos);
}

TEST_CASE("verify with unknown suite is a usage error") {
  auto r = run_cli({"verify", "nonsense"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"dim"}).code == 2);                           // missing --signature
  CHECK(run_cli({"link", "--signature", "1,0"}).code == 2);    // missing --to-level
  CHECK(run_cli({"zw", "--z", "1", "--z2", "1/2", "--w", "1/2", "--w2", "1/2",
                 "--N", "1"}).code == 2);                      // inadmissible
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("output file and config merging") {
  std::string cfg_path = "/tmp/gtml_test_config.json";
  std::string out_path = "/tmp/gtml_test_out.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << R"({"signature": "1,0"})";
  }
  auto r = run_cli({"dim", "--config", cfg_path, "--out", out_path});
  REQUIRE(r.code == 0);
  CHECK(json::parse(slurp(out_path))["dim"] == "2");

  // flags override config values
  auto r2 = run_cli({"dim", "--config", cfg_path, "--signature", "2,1,0", "--out", out_path});
  REQUIRE(r2.code == 0);
  CHECK(json::parse(slurp(out_path))["dim"] == "8");
  std::remove(cfg_path.c_str());
  std::remove(out_path.c_str());
}

TEST_CASE("csv format flattens objects") {
  auto r = run_cli({"dim", "--signature", "2,1,0", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "dim,8\n");
}

TEST_CASE("verify output is byte-stable across repeated runs") {
  std::vector<std::string> args = {"verify", "links", "--max-level", "3"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
