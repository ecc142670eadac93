#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/function.hpp"
#include "approxmin/vectopt.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace approxmin {

/// One expected outcome: run `op` at candidate `candidate` with `params`
/// (scalars are one-element lists) and compare against `status`.
struct Expectation {
  std::string op;
  std::size_t candidate = 0;
  std::map<std::string, std::vector<double>> params;
  std::string status;

  double param(const std::string& key) const;
  double param_or(const std::string& key, double fallback) const;
  std::vector<double> list_or(const std::string& key, std::vector<double> fallback) const;
};

/// Problem-spec document (JSON):
///
///     {"name": "spike", "objectives": ["n=1; x1 == 0 : 1 ; else : 0"],
///      "constraints": [], "domain": {"kind": "full", "dim": 1},
///      "candidates": [[0]], "expect": [...]}
///
/// Domains are {"kind": "full", "dim"}, {"kind": "box", "lower", "upper",
/// "lower_open"?, "upper_open"?} with "inf"/"-inf" for unbounded sides,
/// {"kind": "halfspace", "normal", "offset"}, {"kind": "ball", "center",
/// "radius", "open"?} and {"kind": "intersection", "members"}.
struct ProblemSpec {
  std::string name;
  std::string note;
  std::vector<std::string> objective_texts;
  std::vector<std::string> constraint_texts;
  std::vector<PiecewiseFn> objectives;
  std::vector<PiecewiseFn> constraints;
  DomainSet X = DomainSet::full(1);
  std::vector<Point> candidates;
  std::optional<Window> window;
  std::vector<Expectation> expect;

  std::size_t dim() const { return X.dim(); }
  bool scalar() const { return objectives.size() == 1 && constraints.empty(); }
  VectorProblem vector_problem() const { return {objectives, constraints, X}; }
};

/// Throws ParseError (kSchema for structural problems; function-spec errors
/// keep their own code with the position inside that string).
ProblemSpec parse_problem(const std::string& json_text);
ProblemSpec load_problem(const std::filesystem::path& path);

DomainSet parse_domain(const std::string& json_text);
std::string domain_to_json(const DomainSet& X);

}  // namespace approxmin
