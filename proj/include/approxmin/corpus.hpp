#pragma once

#include "approxmin/minima.hpp"
#include "approxmin/problem.hpp"
#include "approxmin/sampling.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace approxmin {

/// Every problem spec (*.json) in `dir`, sorted by file name.
std::vector<ProblemSpec> load_corpus(const std::filesystem::path& dir);

/// The fixture whose name (or file stem) is `name`.
ProblemSpec find_fixture(const std::filesystem::path& dir, const std::string& name);

/// Operation ids understood by run_expectation.
const std::vector<std::string>& corpus_operations();

/// Runs one expectation and returns the observed status string. The plan's
/// window is replaced by the fixture's window when it has one.
std::string run_expectation(const ProblemSpec& spec, const Expectation& e, const SamplePlan& plan);

struct ExpectationResult {
  std::string fixture;
  std::string op;
  std::size_t candidate = 0;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct CorpusRun {
  std::vector<ExpectationResult> rows;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

/// Runs every expectation of every fixture; fixtures fan out over plan.threads.
CorpusRun run_corpus(const std::vector<ProblemSpec>& fixtures, const SamplePlan& plan);

/// One audit instance per candidate of every scalar fixture (one objective,
/// no constraints). With lsc_only, instances whose function fails check_lsc
/// at the candidate are dropped.
std::vector<AuditInstance> audit_instances(const std::vector<ProblemSpec>& fixtures, bool lsc_only,
                                           const SamplePlan& plan);

/// Plan with the fixture window applied.
SamplePlan plan_for(const ProblemSpec& spec, const SamplePlan& plan);

}  // namespace approxmin
