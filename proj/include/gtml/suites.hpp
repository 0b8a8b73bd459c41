#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtml/numeric.hpp"

namespace gtml {

// Knobs shared by the verification suites; zero/empty fields fall back to
// the per-suite defaults pinned to the acceptance thresholds.
struct SuiteConfig {
  RatComplex z{Rat(1, 2)}, z2{Rat(1, 2)}, w{Rat(1, 2)}, w2{Rat(1, 2)};
  int level = 0;
  long box = 0;
  double eps = 0;
  long cut = 0;
  std::uint64_t seed = 20240817;
  int max_level = 0;
};

struct SuiteCase {
  std::string id;
  std::string inputs;
  std::string expected;
  std::string got;
  bool exact = false;    // pass criterion is exact equality
  double residual = 0;   // measured residual for tolerance cases
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<SuiteCase> cases;
  bool pass = false;
  double wall_ms = 0;  // diagnostic only; never serialized into output files
};

// One suite per acceptance criterion:
//   dims thm3a links dougall coherency balance intertwine stationarity
//   simulate boundary repring bouquet determinism
const std::vector<std::string>& suite_names();

VerificationReport verify_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace gtml
