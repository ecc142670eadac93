#include "approxmin/corpus.hpp"

#include "approxmin/cone.hpp"
#include "approxmin/error.hpp"
#include "approxmin/evp.hpp"
#include "approxmin/nonsmooth.hpp"
#include "approxmin/optcond.hpp"
#include "approxmin/parallel.hpp"
#include "approxmin/vectopt.hpp"

#include <algorithm>

namespace approxmin {

namespace {

const PiecewiseFn& scalar_objective(const ProblemSpec& s, const Expectation& e) {
  if (s.objectives.size() != 1) throw Error("operation '" + e.op + "' needs exactly one objective");
  return s.objectives.front();
}

std::string verdict_status(const Verdict& v) { return to_string(v.status); }

std::vector<double> alpha_for(const ProblemSpec& s, const Expectation& e) {
  std::vector<double> a = e.list_or("alpha", {});
  if (a.size() == 1 && s.objectives.size() > 1) a.assign(s.objectives.size(), a.front());
  if (a.size() != s.objectives.size()) throw Error("operation '" + e.op + "' needs one alpha per objective");
  return a;
}

bool same_witness(const Verdict& a, const Verdict& b) {
  if (a.witness.has_value() != b.witness.has_value()) return false;
  return !a.witness || same_point(a.witness->point, b.witness->point);
}

}  // namespace

const std::vector<std::string>& corpus_operations() {
  static const std::vector<std::string> ops = {
      "usual-min",     "eps-min",         "eps-quasi-min",   "quasi-min",
      "regular-approx", "local-min",      "local-eps-min",   "local-radius",
      "lsc",           "continuity",      "bounded-below",   "wgm-iv",
      "efficient",     "quasi-efficient", "quasi-efficient-lipschitz",
      "evp-premise",   "evp",             "fritz-john",      "find-multipliers",
      "scalar-collapse", "normal-cone-invariance"};
  return ops;
}

SamplePlan plan_for(const ProblemSpec& spec, const SamplePlan& plan) {
  SamplePlan p = plan;
  if (spec.window) p.window = spec.window;
  return p;
}

std::string run_expectation(const ProblemSpec& spec, const Expectation& e, const SamplePlan& base) {
  const SamplePlan plan = plan_for(spec, base);
  if (e.candidate >= spec.candidates.size()) throw Error("expectation refers to a missing candidate");
  const Point& x0 = spec.candidates[e.candidate];
  const std::string& op = e.op;

  if (op == "usual-min") return verdict_status(check_usual_minimum(scalar_objective(spec, e), spec.X, x0, plan));
  if (op == "eps-min")
    return verdict_status(check_eps_minimum(scalar_objective(spec, e), spec.X, x0, e.param("eps"), plan));
  if (op == "eps-quasi-min")
    return verdict_status(check_eps_quasi_minimum(scalar_objective(spec, e), spec.X, x0, e.param("eps"), plan));
  if (op == "quasi-min")
    return verdict_status(check_quasi_minimum_alpha(scalar_objective(spec, e), spec.X, x0, e.param("alpha"), plan));
  if (op == "regular-approx")
    return verdict_status(check_regular_approx(scalar_objective(spec, e), spec.X, x0, e.param("eps"), plan));
  if (op == "local-min")
    return verdict_status(
        check_notion(NotionId::local_min(e.param("delta")), scalar_objective(spec, e), spec.X, x0, plan));
  if (op == "local-eps-min")
    return verdict_status(check_notion(NotionId::local_eps_min(e.param("eps"), e.param("delta")),
                                       scalar_objective(spec, e), spec.X, x0, plan));
  if (op == "local-radius") {
    const auto r = find_local_radius(NotionId::local_eps_min(e.param("eps"), 1.0), scalar_objective(spec, e), spec.X,
                                     x0, plan);
    return r ? "found" : "none";
  }
  if (op == "lsc") return verdict_status(check_lsc(scalar_objective(spec, e), x0, plan, spec.X));
  if (op == "continuity") return verdict_status(check_continuity(scalar_objective(spec, e), x0, plan, spec.X));
  if (op == "bounded-below") return verdict_status(check_bounded_below(scalar_objective(spec, e), spec.X, plan).verdict);
  if (op == "wgm-iv")
    return verdict_status(check_wgm_condition_iv(scalar_objective(spec, e), x0, plan, e.list_or("levels", {})));
  if (op == "efficient")
    return verdict_status(check_efficient(spec.vector_problem(), x0, e.param_or("delta", kGlobal), plan));
  if (op == "quasi-efficient")
    return verdict_status(
        check_quasi_efficient(spec.vector_problem(), x0, alpha_for(spec, e), e.param_or("delta", kGlobal), plan));
  if (op == "quasi-efficient-lipschitz") {
    const VectorProblem vp = spec.vector_problem();
    const AlphaChoice a = alpha_from_lipschitz(vp, x0, e.param_or("radius", 0.5), plan);
    return verdict_status(check_quasi_efficient(vp, x0, a.alpha, a.delta, plan));
  }
  if (op == "evp-premise")
    return verdict_status(verify_evp_premise(scalar_objective(spec, e), spec.X, x0, e.param("eps"), plan));
  if (op == "evp") {
    const PiecewiseFn& f = scalar_objective(spec, e);
    const EvpCertificate c = ekeland_search(f, spec.X, x0, e.param("eps"), e.param_or("lambda", 1.0), plan);
    if (!c.valid()) return "invalid";
    const double slope = c.eps / c.lambda;
    const int fine = 2 * (plan.grid_res - 1) + 1;
    return c.trivial || evp_violation(f, spec.X, c.x_lambda, slope, fine, plan) <= 1e-9 ? "valid" : "invalid-on-refinement";
  }
  if (op == "fritz-john") {
    const VectorProblem vp = spec.vector_problem();
    const FJCertificate c =
        check_fritz_john(vp, x0, alpha_for(spec, e), e.list_or("lambda", {}), e.list_or("mu", {}), plan);
    return c.residual <= 1e-4 ? "zero-residual" : "positive-residual";
  }
  if (op == "find-multipliers") {
    const VectorProblem vp = spec.vector_problem();
    std::vector<double> alpha;
    if (e.params.count("alpha")) {
      alpha = alpha_for(spec, e);
    } else {
      alpha = alpha_from_lipschitz(vp, x0, e.param_or("radius", 0.5), plan).alpha;
    }
    return find_multipliers(vp, x0, alpha, plan).success ? "success" : "failure";
  }
  if (op == "scalar-collapse") {
    if (!spec.scalar()) throw Error("scalar-collapse needs one objective and no constraints");
    const PiecewiseFn& f = spec.objectives.front();
    const VectorProblem vp = spec.vector_problem();
    const double alpha = e.param_or("alpha", 1.0);
    const Verdict u = check_usual_minimum(f, spec.X, x0, plan);
    const Verdict ve = check_efficient(vp, x0, kGlobal, plan);
    const Verdict q = check_quasi_minimum_alpha(f, spec.X, x0, alpha, plan);
    const Verdict vq = check_quasi_efficient(vp, x0, {alpha}, kGlobal, plan);
    const bool agree = u.status == ve.status && same_witness(u, ve) && q.status == vq.status && same_witness(q, vq);
    return agree ? "agree" : "disagree";
  }
  if (op == "normal-cone-invariance") {
    const ConeRep base_cone = normal_cone(spec.X, x0);
    for (double delta : e.list_or("deltas", {0.1, 1.0, 10.0})) {
      const DomainSet local = spec.X & DomainSet::ball(x0, delta, true);
      if (!same_generators(normal_cone(local, x0), base_cone)) return "differ";
    }
    return "agree";
  }
  throw Error("unknown corpus operation '" + op + "'");
}

CorpusRun run_corpus(const std::vector<ProblemSpec>& fixtures, const SamplePlan& plan) {
  std::vector<std::vector<ExpectationResult>> per(fixtures.size());
  parallel_for(fixtures.size(), plan.threads, [&](std::size_t i) {
    SamplePlan inner = plan;
    inner.threads = 1;
    for (const Expectation& e : fixtures[i].expect) {
      ExpectationResult r{fixtures[i].name, e.op, e.candidate, e.status, {}, false};
      try {
        r.actual = run_expectation(fixtures[i], e, inner);
      } catch (const std::exception& ex) {
        r.actual = std::string("error: ") + ex.what();
      }
      r.pass = r.actual == r.expected;
      per[i].push_back(std::move(r));
    }
  });
  CorpusRun out;
  for (auto& rows : per) {
    for (auto& r : rows) {
      (r.pass ? out.passed : out.failed) += 1;
      out.rows.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<ProblemSpec> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("corpus directory '" + dir.string() + "' not found");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ProblemSpec> out;
  for (const auto& f : files) {
    ProblemSpec s = load_problem(f);
    if (s.name.empty()) s.name = f.stem().string();
    out.push_back(std::move(s));
  }
  return out;
}

ProblemSpec find_fixture(const std::filesystem::path& dir, const std::string& name) {
  const std::filesystem::path direct = dir / (name + ".json");
  if (std::filesystem::exists(direct)) {
    ProblemSpec s = load_problem(direct);
    if (s.name.empty()) s.name = name;
    return s;
  }
  for (ProblemSpec& s : load_corpus(dir))
    if (s.name == name) return std::move(s);
  throw Error("no fixture named '" + name + "' in '" + dir.string() + "'");
}

std::vector<AuditInstance> audit_instances(const std::vector<ProblemSpec>& fixtures, bool lsc_only,
                                           const SamplePlan& plan) {
  std::vector<AuditInstance> all;
  for (const ProblemSpec& s : fixtures) {
    if (!s.scalar()) continue;
    for (std::size_t c = 0; c < s.candidates.size(); ++c) {
      if (!s.X.contains(s.candidates[c])) continue;
      const std::string name = c == 0 ? s.name : s.name + "[" + std::to_string(c) + "]";
      all.push_back({name, s.objectives.front(), s.X, s.candidates[c], s.window});
    }
  }
  if (!lsc_only) return all;
  std::vector<char> keep(all.size(), 0);
  parallel_for(all.size(), plan.threads, [&](std::size_t i) {
    SamplePlan p = plan;
    if (all[i].window) p.window = all[i].window;
    keep[i] = !check_lsc(all[i].f, all[i].x0, p, all[i].X).fails();
  });
  std::vector<AuditInstance> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (keep[i]) out.push_back(std::move(all[i]));
  return out;
}

}  // namespace approxmin
