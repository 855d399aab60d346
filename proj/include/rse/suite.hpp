#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rse/generator.hpp"
#include "rse/io.hpp"

namespace rse {

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t count = 500;
  std::size_t max_dim = 8;
  std::vector<Profile> profiles{Profile::BlockPermutation, Profile::Global, Profile::Identity};
  std::uint64_t horizon = 1000;
  std::size_t ergodic_samples = 50;     // partners B for the A (x) B checks
  std::size_t random_components = 1000; // rectangle-join checks for n*m <= 64
  std::size_t threads = 1;              // does not affect the report

  /// Throws std::invalid_argument when count, max_dim or horizon are out of range.
  void validate() const;
};

struct CheckTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Defect {
  std::string check;
  Json detail;  // always carries the replayable system(s)
};

struct SuiteReport {
  SuiteConfig config;
  std::map<std::string, CheckTally> checks;
  std::size_t ergodic_only = 0;
  std::size_t weak_mixing = 0;
  std::size_t neither = 0;
  std::size_t ergodic_partners_used = 0;
  std::vector<Defect> defects;

  bool clean() const { return defects.empty(); }
};

/// The corpus system at `index`: profile cycles through config.profiles and
/// the RNG stream is derived from (seed, index).
CEPS corpus_system(const SuiteConfig& config, std::size_t index);

SuiteReport run_suite(const SuiteConfig& config);
Json suite_report_to_json(const SuiteReport& report);

}  // namespace rse
