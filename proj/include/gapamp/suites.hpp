#pragma once

#include <string>
#include <vector>

#include "gapamp/pipeline.hpp"

namespace gapamp {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> lines;  // per-case results, sorted by case id
  bool pass = false;
  std::string summary;
};

// Property suites behind the verify subcommand. Hard assertions count as
// failures directly; empirical fractions are checked against their stated
// thresholds in an aggregate line.
SuiteResult suite_submultiplicativity(std::uint64_t seed, std::size_t cases = 200);
SuiteResult suite_lemma24();
SuiteResult suite_minkowski(std::uint64_t seed, std::size_t cases = 100);
SuiteResult suite_claim36(std::uint64_t seed, std::size_t cases = 10000);
SuiteResult suite_code_tensor(std::uint64_t seed, std::size_t cases = 50);
SuiteResult suite_trichotomy(std::uint64_t seed, std::size_t lattices = 3,
                             std::size_t sublattices = 100);
SuiteResult suite_pipeline_yes(std::uint64_t seed, std::size_t runs = 20);
SuiteResult suite_pipeline_no(std::uint64_t seed, std::size_t runs = 20);

// A certified-NO desk pipeline run with q = 2, seeded deterministically.
PipelineRun certified_no_run(std::uint64_t seed);
// A planted-YES desk pipeline run with q = 2.
PipelineRun planted_yes_run(std::uint64_t seed);

SuiteResult run_suite_by_name(const std::string& name, std::uint64_t seed);
std::vector<std::string> suite_names();

}  // namespace gapamp
