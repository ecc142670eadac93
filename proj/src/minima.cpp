#include "approxmin/minima.hpp"

#include "approxmin/error.hpp"
#include "approxmin/nonsmooth.hpp"
#include "approxmin/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace approxmin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_member(const DomainSet& X, const Point& x0) {
  if (static_cast<std::size_t>(x0.size()) != X.dim()) throw DimensionError(X.dim(), static_cast<std::size_t>(x0.size()));
  if (!X.contains(x0)) throw Error("candidate point is not in X");
}

/// Per-axis resolution so the window grid stays below ~250k points.
int grid_resolution(int requested, std::size_t dim) {
  int res = requested;
  while (res > 2 && std::pow(static_cast<double>(res), static_cast<double>(dim)) > 250000.0) --res;
  return res;
}

std::string fmt(double v) { return ExtReal(v).to_string(); }

}  // namespace

const char* to_string(NotionTag tag) {
  switch (tag) {
    case NotionTag::kUsualMin: return "usual-min";
    case NotionTag::kLocalMin: return "local-min";
    case NotionTag::kEpsMin: return "eps-min";
    case NotionTag::kLocalEpsMin: return "local-eps-min";
    case NotionTag::kEpsQuasiMin: return "eps-quasi-min";
    case NotionTag::kRegularApprox: return "regular-approx";
    case NotionTag::kQuasiMinAlpha: return "quasi-min";
  }
  return "?";
}

NotionTag notion_tag_from_string(const std::string& s) {
  for (NotionTag t : {NotionTag::kUsualMin, NotionTag::kLocalMin, NotionTag::kEpsMin, NotionTag::kLocalEpsMin,
                      NotionTag::kEpsQuasiMin, NotionTag::kRegularApprox, NotionTag::kQuasiMinAlpha}) {
    if (s == to_string(t)) return t;
  }
  throw Error("unknown notion '" + s + "'");
}

void NotionId::validate() const {
  const bool uses_eps = tag == NotionTag::kEpsMin || tag == NotionTag::kLocalEpsMin ||
                        tag == NotionTag::kEpsQuasiMin || tag == NotionTag::kRegularApprox;
  const bool local = tag == NotionTag::kLocalMin || tag == NotionTag::kLocalEpsMin;
  if (uses_eps && !(eps >= 0 && std::isfinite(eps))) throw Error("notion needs a finite eps >= 0");
  if (tag == NotionTag::kQuasiMinAlpha && !(alpha > 0 && std::isfinite(alpha)))
    throw Error("quasi-min needs a finite alpha > 0");
  if (local && !(delta > 0)) throw Error("local notion needs delta > 0");
}

std::string NotionId::name() const {
  std::string out = to_string(tag);
  switch (tag) {
    case NotionTag::kUsualMin: break;
    case NotionTag::kLocalMin: out += "(delta=" + fmt(delta) + ")"; break;
    case NotionTag::kEpsMin:
    case NotionTag::kEpsQuasiMin:
    case NotionTag::kRegularApprox: out += "(eps=" + fmt(eps) + ")"; break;
    case NotionTag::kLocalEpsMin: out += "(eps=" + fmt(eps) + ",delta=" + fmt(delta) + ")"; break;
    case NotionTag::kQuasiMinAlpha: out += "(alpha=" + fmt(alpha) + ")"; break;
  }
  return out;
}

std::vector<Point> universal_samples(const DomainSet& X, const Point& x0, const SamplePlan& plan,
                                     std::optional<double> delta, std::size_t* primary) {
  plan.validate();
  if (delta && !(*delta > 0)) throw Error("local radius must be positive");
  const auto outside = [&](const Point& p) { return delta && std::isfinite(*delta) && !((p - x0).norm() < *delta); };
  std::vector<Point> out = grid_samples(X, grid_resolution(plan.grid_res, X.dim()), sampling_window(X, plan));
  std::erase_if(out, outside);
  if (primary) *primary = out.size();
  for (int j = 0; j < plan.expand_levels; ++j) {
    std::vector<Point> level = expanding_samples(X, j, plan);
    std::erase_if(level, outside);
    out.insert(out.end(), level.begin(), level.end());
  }
  const double r0 = delta && std::isfinite(*delta) ? *delta : plan.radius0;
  for (int k = 0; k < plan.stages; ++k) {
    for (Point& p : ball_samples(x0, r0 * std::pow(plan.ratio, k), plan.samples, plan, static_cast<std::uint64_t>(k))) {
      if (X.contains(p)) out.push_back(std::move(p));
    }
  }
  return out;
}

Verdict check_slope_inequality(const PiecewiseFn& f, const Point& x0, const std::vector<Point>& samples,
                               double offset, double slope, double margin, std::size_t primary) {
  Verdict v;
  v.tolerance = margin;
  v.samples = samples.size();
  if (samples.empty()) {
    v.status = Status::kVacuous;
    v.note = "empty sample set";
    return v;
  }
  const ExtReal fx0 = f(x0);
  double worst = 0.0;
  std::optional<Point> worst_point;
  ExtReal worst_fx;
  bool primary_hit = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Point& x = samples[i];
    const ExtReal fx = f(x);
    if (fx.is_infinite()) continue;
    const double dist = (x - x0).norm();
    const double rhs = fx.value() + offset + slope * dist + margin;
    if (!(fx0.value() > rhs)) continue;
    ++v.violations;
    if (i < primary) primary_hit = true;
    else if (primary_hit) continue;
    const double excess = fx0.is_infinite() ? kInf : fx0.value() - rhs;
    if (!worst_point || excess > worst || (excess == worst && lex_less(x, *worst_point))) {
      worst = excess;
      worst_point = x;
      worst_fx = fx;
    }
  }
  if (!worst_point) {
    v.status = Status::kHoldsOnSample;
    return v;
  }
  v.status = Status::kFails;
  v.witness = Witness{*worst_point,
                      {{"f(x0)", fx0},
                       {"f(x)", worst_fx},
                       {"offset", offset},
                       {"slope", slope},
                       {"dist", (*worst_point - x0).norm()}}};
  return v;
}

namespace {

Verdict slope_check(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double offset, double slope,
                    const SamplePlan& plan, std::optional<double> delta) {
  require_member(X, x0);
  std::size_t primary = 0;
  const std::vector<Point> pts = universal_samples(X, x0, plan, delta, &primary);
  return check_slope_inequality(f, x0, pts, offset, slope, default_margin(f), primary);
}

Verdict notion_on(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X, const Point& x0,
                  const SamplePlan& plan, std::optional<double> delta) {
  notion.validate();
  switch (notion.tag) {
    case NotionTag::kUsualMin:
    case NotionTag::kLocalMin: return slope_check(f, X, x0, 0.0, 0.0, plan, delta);
    case NotionTag::kEpsMin:
    case NotionTag::kLocalEpsMin: return slope_check(f, X, x0, notion.eps, 0.0, plan, delta);
    case NotionTag::kEpsQuasiMin: return slope_check(f, X, x0, 0.0, std::sqrt(notion.eps), plan, delta);
    case NotionTag::kQuasiMinAlpha: return slope_check(f, X, x0, 0.0, notion.alpha, plan, delta);
    case NotionTag::kRegularApprox: {
      Verdict a = slope_check(f, X, x0, notion.eps, 0.0, plan, delta);
      if (a.status != Status::kHoldsOnSample) {
        if (a.fails()) a.note = "eps-min conjunct fails";
        return a;
      }
      Verdict b = slope_check(f, X, x0, 0.0, std::sqrt(notion.eps), plan, delta);
      if (b.fails()) b.note = "eps-quasi-min conjunct fails";
      b.samples += a.samples;
      return b;
    }
  }
  throw Error("unhandled notion");
}

}  // namespace

Verdict check_usual_minimum(const PiecewiseFn& f, const DomainSet& X, const Point& x0, const SamplePlan& plan) {
  return notion_on(NotionId::usual_min(), f, X, x0, plan, std::nullopt);
}

Verdict check_eps_minimum(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                          const SamplePlan& plan) {
  return notion_on(NotionId::eps_min(eps), f, X, x0, plan, std::nullopt);
}

Verdict check_eps_quasi_minimum(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                                const SamplePlan& plan) {
  return notion_on(NotionId::eps_quasi_min(eps), f, X, x0, plan, std::nullopt);
}

Verdict check_quasi_minimum_alpha(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double alpha,
                                  const SamplePlan& plan) {
  return notion_on(NotionId::quasi_min(alpha), f, X, x0, plan, std::nullopt);
}

Verdict check_regular_approx(const PiecewiseFn& f, const DomainSet& X, const Point& x0, double eps,
                             const SamplePlan& plan) {
  return notion_on(NotionId::regular_approx(eps), f, X, x0, plan, std::nullopt);
}

Verdict check_local_variant(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X, const Point& x0,
                            double delta, const SamplePlan& plan) {
  if (!(delta > 0)) throw Error("local radius must be positive");
  NotionId base = notion;
  base.delta = delta;
  return notion_on(base, f, X, x0, plan, delta);
}

Verdict check_notion(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X, const Point& x0,
                     const SamplePlan& plan) {
  const bool local = notion.tag == NotionTag::kLocalMin || notion.tag == NotionTag::kLocalEpsMin;
  return notion_on(notion, f, X, x0, plan, local ? std::optional<double>(notion.delta) : std::nullopt);
}

std::optional<double> find_local_radius(const NotionId& notion, const PiecewiseFn& f, const DomainSet& X,
                                        const Point& x0, const SamplePlan& plan) {
  for (int k = 0; k < plan.stages; ++k) {
    const double delta = plan.radius(k);
    if (check_local_variant(notion, f, X, x0, delta, plan).holds()) return delta;
  }
  return std::nullopt;
}

BoundedBelow check_bounded_below(const PiecewiseFn& f, const DomainSet& X, const SamplePlan& plan) {
  plan.validate();
  BoundedBelow out;
  std::vector<Point> argmins;
  for (int j = 0; j < plan.expand_levels; ++j) {
    const std::vector<Point> pts = expanding_samples(X, j, plan);
    out.verdict.samples += pts.size();
    if (pts.empty()) continue;
    ExtReal best = ExtReal::infinity();
    Point arg = pts.front();
    for (const Point& p : pts) {
      const ExtReal v = f(p);
      if (v < best || (v == best && lex_less(p, arg))) {
        best = v;
        arg = p;
      }
    }
    out.level_minima.push_back(best);
    argmins.push_back(arg);
    out.verdict.details.emplace_back("level_min_" + std::to_string(j), best.value());
  }
  if (out.level_minima.empty()) {
    out.verdict.status = Status::kVacuous;
    out.verdict.note = "X has no points in the expanding boxes";
    out.inf_estimate = ExtReal::infinity();
    return out;
  }
  out.inf_estimate = out.level_minima.back();
  out.verdict.status = Status::kHoldsOnSample;
  const std::size_t L = out.level_minima.size();
  if (L < 3) return out;
  const ExtReal a = out.level_minima[L - 3], b = out.level_minima[L - 2], c = out.level_minima[L - 1];
  if (!(a.is_finite() && b.is_finite() && c.is_finite())) return out;
  const double d1 = a.value() - b.value(), d2 = b.value() - c.value();
  if (d1 > 0 && d2 > 0 && d2 >= 0.99 * d1) {
    out.verdict.status = Status::kFails;
    out.verdict.violations = 1;
    out.verdict.witness = Witness{argmins.back(), {{"f(x)", c}, {"prev_min", b}, {"prev_prev_min", a}}};
    out.verdict.note = "sampled minimum keeps decreasing as the domain expands";
  }
  return out;
}

std::vector<double> default_wgm_levels(double fx0) {
  std::vector<double> out;
  for (int j = -3; j <= 4; ++j) out.push_back(fx0 - std::ldexp(1.0, j));
  return out;
}

Verdict check_wgm_condition_iv(const PiecewiseFn& f, const Point& x0, const SamplePlan& plan,
                               const std::vector<double>& levels) {
  plan.validate();
  const ExtReal fx0 = f(x0);
  if (fx0.is_infinite()) throw Error("condition (iv) needs a finite f(x0)");
  const std::vector<double> ls = levels.empty() ? default_wgm_levels(fx0.value()) : levels;

  // Largest value (lexicographic tie-break) on each deleted ball.
  struct StageMax {
    double radius;
    ExtReal value;
    Point arg;
    std::size_t count;
  };
  std::vector<StageMax> stages;
  for (int k = 0; k < plan.stages; ++k) {
    std::vector<Point> pts = ball_samples(x0, plan.radius(k), plan.samples, plan, static_cast<std::uint64_t>(k));
    std::erase_if(pts, [&](const Point& p) { return same_point(p, x0); });
    if (pts.empty()) continue;
    StageMax s{plan.radius(k), f(pts.front()), pts.front(), pts.size()};
    for (const Point& p : pts) {
      const ExtReal v = f(p);
      if (v > s.value || (v == s.value && lex_less(p, s.arg))) {
        s.value = v;
        s.arg = p;
      }
    }
    stages.push_back(std::move(s));
  }

  Verdict v;
  v.status = Status::kHoldsOnSample;
  for (const StageMax& s : stages) v.samples += s.count;
  if (stages.empty()) {
    v.status = Status::kVacuous;
    return v;
  }
  for (double l : ls) {
    if (!(l < fx0.value())) continue;
    for (const StageMax& s : stages) {
      if (!(s.value <= ExtReal(l))) continue;
      ++v.violations;
      v.details.emplace_back("l", l);
      v.details.emplace_back("delta", s.radius);
      if (!v.witness) {
        v.status = Status::kFails;
        v.witness = Witness{s.arg, {{"f(x0)", fx0}, {"l", l}, {"delta", s.radius}, {"f(x)", s.value}}};
      }
      break;  // the largest failing radius per level is enough
    }
  }
  return v;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kSatisfied: return "satisfied";
    case Outcome::kViolated: return "violated";
    case Outcome::kNotDecidable: return "not-decidable-by-sampling";
  }
  return "?";
}

WgmReport audit_notion(const NotionId& notion, const std::vector<AuditInstance>& corpus,
                       const SamplePlan& base_plan) {
  notion.validate();
  if (corpus.empty()) throw Error("audit needs a nonempty fixture set");
  struct Row {
    InstanceOutcome out;
    std::optional<Witness> reject, unbounded, discontinuity, wgm;
  };
  std::vector<Row> rows(corpus.size());
  parallel_for(corpus.size(), base_plan.threads, [&](std::size_t i) {
    const AuditInstance& in = corpus[i];
    Row& r = rows[i];
    SamplePlan plan = base_plan;
    if (in.window) plan.window = in.window;
    r.out.name = in.name;
    r.out.x0 = in.x0;
    const Verdict acc = check_notion(notion, in.f, in.X, in.x0, plan);
    r.out.accepted = acc.holds();
    r.reject = acc.witness;
    r.out.usual_min = check_usual_minimum(in.f, in.X, in.x0, plan).holds();
    if (!r.out.accepted) return;
    const BoundedBelow bb = check_bounded_below(in.f, in.X, plan);
    r.out.bounded_below = !bb.verdict.fails();
    r.unbounded = bb.verdict.witness;
    const Verdict cont = check_continuity(in.f, in.x0, plan, in.X);
    r.out.continuous = !cont.fails();
    r.discontinuity = cont.witness;
    r.out.lsc = !check_lsc(in.f, in.x0, plan, in.X).fails();
    if (in.f(in.x0).is_finite()) {
      const Verdict iv = check_wgm_condition_iv(in.f, in.x0, plan);
      r.out.wgm_iv = !iv.fails();
      r.wgm = iv.witness;
    }
  });

  WgmReport rep;
  rep.notion = notion;
  auto& [c1, c2, c3, c4] = rep.conditions;
  std::vector<std::string> lsc_failures;
  for (const Row& r : rows) {
    rep.instances.push_back(r.out);
    if (r.out.usual_min && !r.out.accepted) {
      c1.outcome = Outcome::kViolated;
      c1.fixtures.push_back(r.out.name);
      if (!c1.witness) c1.witness = r.reject;
    }
    if (!r.out.accepted) continue;
    if (!r.out.bounded_below) {
      c2.outcome = Outcome::kViolated;
      c2.fixtures.push_back(r.out.name);
      if (!c2.witness) c2.witness = r.unbounded;
    }
    if (!r.out.continuous) {
      c3.fixtures.push_back(r.out.name);
      if (!c3.witness) c3.witness = r.discontinuity;
    }
    if (!r.out.lsc) lsc_failures.push_back(r.out.name);
    if (!r.out.wgm_iv) {
      c4.outcome = Outcome::kViolated;
      c4.fixtures.push_back(r.out.name);
      if (!c4.witness) c4.witness = r.wgm;
    }
  }
  c1.note = "usual minima must be accepted";
  c2.note = "accepted points need a finite lower bound";
  if (c3.fixtures.empty()) {
    c3.outcome = Outcome::kNotDecidable;
    c3.note = "no accepted discontinuous instance: not demonstrated";
  } else {
    c3.note = "accepted at a discontinuity";
  }
  if (!lsc_failures.empty()) {
    c3.note += "; lsc fails at accepted points of";
    for (const std::string& n : lsc_failures) c3.note += " " + n;
  }
  c4.note = "no level below f(x0) may bound f on a deleted neighbourhood";
  rep.qualified = std::none_of(rep.conditions.begin(), rep.conditions.end(),
                               [](const ConditionReport& c) { return c.outcome == Outcome::kViolated; });
  return rep;
}

}  // namespace approxmin
