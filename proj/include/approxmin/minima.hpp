#pragma once

#include "approxmin/domain.hpp"
#include "approxmin/function.hpp"
#include "approxmin/sampling.hpp"
#include "approxmin/verdict.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace approxmin {

enum class NotionTag { kUsualMin, kLocalMin, kEpsMin, kLocalEpsMin, kEpsQuasiMin, kRegularApprox, kQuasiMinAlpha };

/// A scalar solution notion with its parameters. `eps` is used by the eps
/// notions, `alpha` by quasi-min-alpha, `delta` by the two local notions.
struct NotionId {
  NotionTag tag = NotionTag::kUsualMin;
  double eps = 0.0;
  double alpha = 0.0;
  double delta = 0.0;

  static NotionId usual_min() { return {NotionTag::kUsualMin}; }
  static NotionId local_min(double delta) { return {NotionTag::kLocalMin, 0, 0, delta}; }
  static NotionId eps_min(double eps) { return {NotionTag::kEpsMin, eps}; }
  static NotionId local_eps_min(double eps, double delta) { return {NotionTag::kLocalEpsMin, eps, 0, delta}; }
  static NotionId eps_quasi_min(double eps) { return {NotionTag::kEpsQuasiMin, eps}; }
  static NotionId regular_approx(double eps) { return {NotionTag::kRegularApprox, eps}; }
  static NotionId quasi_min(double alpha) { return {NotionTag::kQuasiMinAlpha, 0, alpha}; }

  /// Throws Error when the parameters do not match the tag.
  void validate() const;
  std::string name() const;
};

const char* to_string(NotionTag tag);
NotionTag notion_tag_from_string(const std::string& s);

/// Points on which a claim "for all x in X" (or X ∩ B(x0, delta)) is
/// checked: the window grid, the expanding boxes and the shrinking balls
/// around x0, all filtered by X. With `delta`, the balls shrink from delta
/// and grid points are kept only inside the open ball. The window grid comes
/// first; its size is stored in `primary` when given.
std::vector<Point> universal_samples(const DomainSet& X, const Point& x0, const SamplePlan& plan,
                                     std::optional<double> delta = std::nullopt, std::size_t* primary = nullptr);

/// Core scan: fails iff some sample has f(x0) > f(x) + offset + slope*|x - x0| + margin.
/// The witness is the worst violation among the first `primary` samples when
/// any of them violates, else over all samples; ties broken lexicographically.
Verdict check_slope_inequality(const PiecewiseFn& f, const Point& x0, const std::vector<Point>& samples,
                               double offset, double slope, double margin, std::size_t primary = 0);

Verdict check_usual_minimum(const PiecewiseFn& f, const DomainSet& X, const Point& x0, const SamplePlan& plan);
Verdict check_eps_minimum(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                          const SamplePlan& plan);
Verdict check_eps_quasi_minimum(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                                const SamplePlan& plan);
Verdict check_quasi_minimum_alpha(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double alpha,
                                  const SamplePlan& plan);
/// Conjunction of eps-min and eps-quasi-min; a failure carries the witness of
/// the first failing conjunct.
Verdict check_regular_approx(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                             const SamplePlan& plan);

/// The notion's inequality restricted to X ∩ B(x0, delta).
Verdict check_local_variant(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X,
                            const Point& x0, double delta, const SamplePlan& plan);

/// Dispatch on the tag; local tags use notion.delta.
Verdict check_notion(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X, const Point& x0,
                     const SamplePlan& plan);

/// First radius of the plan's schedule on which the local variant holds.
std::optional<double> find_local_radius(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X,
                                        const Point& x0, const SamplePlan& plan);

struct BoundedBelow {
  Verdict verdict;
  /// Smallest sampled value on the largest box.
  ExtReal inf_estimate;
  /// Per-level sampled minima.
  std::vector<ExtReal> level_minima;
};

/// Fails when the per-level minima over the expanding boxes keep falling at a
/// non-slowing rate over the last three levels.
BoundedBelow check_bounded_below(const PiecewiseFn& f, const DomainSet& X, const SamplePlan& plan);

/// Levels f(x0) - 2^j for j = -3..4.
std::vector<double> default_wgm_levels(double fx0);

/// For each level l < f(x0) and each stage radius, some sample of the
/// deleted ball must exceed l. Fails with the first (l, radius) pair where
/// none does; every failing pair is listed in details.
Verdict check_wgm_condition_iv(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                               const std::vector<double>& levels = {});

enum class Outcome { kSatisfied, kViolated, kNotDecidable };
const char* to_string(Outcome o);

struct ConditionReport {
  Outcome outcome = Outcome::kSatisfied;
  /// Fixtures witnessing the outcome.
  std::vector<std::string> fixtures;
  std::optional<Witness> witness;
  std::string note;
};

struct AuditInstance {
  std::string name;
  PiecewiseFn f;
  DomainSet X;
  Point x0;
  /// Overrides the plan's sampling window for this instance.
  std::optional<Window> window;
};

struct InstanceOutcome {
  std::string name;
  Point x0;
  bool accepted = false;
  bool usual_min = false;
  bool bounded_below = true;
  bool continuous = true;
  bool lsc = true;
  bool wgm_iv = true;
};

struct WgmReport {
  NotionId notion;
  std::array<ConditionReport, 4> conditions;
  bool qualified = false;
  std::vector<InstanceOutcome> instances;
};

/// Audits the four WGM conditions for a notion by searching a fixture set:
/// (i) usual minima must be accepted, (ii) accepted points must come with a
/// bounded-below function, (iii) some accepted point should be a
/// discontinuity (otherwise not decidable), (iv) accepted points must pass
/// check_wgm_condition_iv.
WgmReport audit_notion(const NotionId& notion, const std::vector<AuditInstance>& corpus,
                       const SamplePlan& plan);

}  // namespace approxmin
