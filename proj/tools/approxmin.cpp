// approxmin: command-line front end over the approxmin library.
//
// Exit codes: 0 the command ran (failed verdicts are data), 2 input error,
// 3 numerical non-convergence, 1 anything unexpected.

#include "approxmin/cone.hpp"
#include "approxmin/corpus.hpp"
#include "approxmin/error.hpp"
#include "approxmin/evp.hpp"
#include "approxmin/minima.hpp"
#include "approxmin/nonsmooth.hpp"
#include "approxmin/optcond.hpp"
#include "approxmin/problem.hpp"
#include "approxmin/report.hpp"
#include "approxmin/vectopt.hpp"
#include "approxmin/version.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace approxmin;

namespace {

#ifdef APPROXMIN_DEFAULT_CORPUS
const char* kDefaultCorpus = APPROXMIN_DEFAULT_CORPUS;
#else
const char* kDefaultCorpus = "corpus";
#endif

struct Common {
  std::uint64_t seed = 1;
  int samples = 64;
  int stages = 20;
  int grid_res = 201;
  int threads = 1;
  double tol = 1e-4;
  bool no_timings = false;
  std::string out;
  std::string plot_data;
  std::string corpus = kDefaultCorpus;

  SamplePlan plan() const {
    SamplePlan p;
    p.seed = seed;
    p.samples = samples;
    p.stages = stages;
    p.grid_res = grid_res;
    p.threads = threads;
    p.validate();
    return p;
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open '" + p.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A path, or the name of a fixture in the corpus directory.
fs::path resolve_spec(const std::string& arg, const Common& c) {
  if (fs::exists(arg)) return arg;
  const fs::path named = fs::path(c.corpus) / (arg + ".json");
  if (fs::exists(named)) return named;
  throw Error("no problem spec at '" + arg + "'");
}

Point parse_point(const std::string& text, std::size_t dim) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error("--at: '" + item + "' is not a number");
    v.push_back(x);
  }
  if (v.size() != dim) throw DimensionError(dim, v.size());
  return make_point(std::span<const double>(v));
}

/// Points selected by --at, or every candidate of the spec.
std::vector<Point> points_for(const ProblemSpec& spec, const std::string& at) {
  if (!at.empty()) return {parse_point(at, spec.dim())};
  return spec.candidates;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class PlotWriter {
 public:
  explicit PlotWriter(std::size_t dim) : dim_(dim) {
    out_ << "series,index";
    for (std::size_t i = 0; i < dim; ++i) out_ << ",x" << (i + 1);
    out_ << ",f\n";
  }

  void row(const std::string& series, std::size_t index, const Point& x, std::optional<ExtReal> f) {
    out_ << series << ',' << index;
    for (Eigen::Index i = 0; i < x.size(); ++i) out_ << ',' << fmt(x[i]);
    out_ << ',';
    if (f) out_ << (f->is_finite() ? fmt(f->value()) : "inf");
    out_ << '\n';
  }

  /// (x, f(x)) over the sampling window at the plan's grid resolution.
  void function(const std::string& series, const PiecewiseFn& f, const DomainSet& X, const SamplePlan& plan) {
    const Window w = sampling_window(X, plan);
    const int res = dim_ == 1 ? plan.grid_res : std::min(plan.grid_res, 101);
    const std::vector<Point> pts = grid_samples(X, res, w);
    for (std::size_t i = 0; i < pts.size(); ++i) row(series, i, pts[i], f(pts[i]));
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << out_.str();
  }

 private:
  std::size_t dim_;
  std::ostringstream out_;
};

void emit(Json report, const Common& c, std::chrono::steady_clock::time_point start) {
  if (!c.no_timings) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = Json{{"wall_ms", ms}};
  }
  const std::string text = dump_report(report);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error("cannot write '" + c.out + "'");
    f << text;
  }
}

struct ClassifyOpts {
  std::string spec;
  std::string at;
  bool usual = false;
  std::optional<double> eps_min, eps_quasi, regular, quasi_alpha, local_min, local_eps;
  double delta = 0.1;
  bool lsc = false, continuity = false, bounded = false, wgm = false;
};

Json cmd_classify(const ClassifyOpts& o, const Common& c) {
  const fs::path path = resolve_spec(o.spec, c);
  const std::string bytes = read_file(path);
  const ProblemSpec spec = load_problem(path);
  if (!spec.scalar()) throw Error("classify needs a problem with one objective and no constraints");
  const SamplePlan plan = plan_for(spec, c.plan());
  const PiecewiseFn& f = spec.objectives.front();

  std::vector<NotionId> notions;
  if (o.usual) notions.push_back(NotionId::usual_min());
  if (o.eps_min) notions.push_back(NotionId::eps_min(*o.eps_min));
  if (o.eps_quasi) notions.push_back(NotionId::eps_quasi_min(*o.eps_quasi));
  if (o.regular) notions.push_back(NotionId::regular_approx(*o.regular));
  if (o.quasi_alpha) notions.push_back(NotionId::quasi_min(*o.quasi_alpha));
  if (o.local_min) notions.push_back(NotionId::local_min(*o.local_min));
  if (o.local_eps) notions.push_back(NotionId::local_eps_min(*o.local_eps, o.delta));
  const bool any_property = o.lsc || o.continuity || o.bounded || o.wgm;
  if (notions.empty() && !any_property) notions.push_back(NotionId::usual_min());
  for (const NotionId& n : notions) n.validate();

  Json report = report_header("classify", bytes, plan);
  report["spec"] = spec.name;
  Json points = Json::array();
  std::size_t held = 0, failed = 0;
  const std::vector<Point> xs = points_for(spec, o.at);
  for (const Point& x0 : xs) {
    if (!spec.X.contains(x0)) throw Error("point is not in the domain");
    Json pj;
    pj["x0"] = to_json(x0);
    pj["f_x0"] = to_json(f(x0));
    Json checks = Json::array();
    auto add = [&](Json name, const Verdict& v) {
      (v.fails() ? failed : held) += 1;
      checks.push_back(Json{{"check", std::move(name)}, {"verdict", to_json(v)}});
    };
    for (const NotionId& n : notions) add(to_json(n), check_notion(n, f, spec.X, x0, plan));
    if (o.lsc) add(Json{{"notion", "lsc"}}, check_lsc(f, x0, plan, spec.X));
    if (o.continuity) add(Json{{"notion", "continuity"}}, check_continuity(f, x0, plan, spec.X));
    if (o.wgm) add(Json{{"notion", "wgm-iv"}}, check_wgm_condition_iv(f, x0, plan));
    pj["checks"] = checks;
    points.push_back(pj);
  }
  if (o.bounded) {
    const BoundedBelow b = check_bounded_below(f, spec.X, plan);
    (b.verdict.fails() ? failed : held) += 1;
    Json levels = Json::array();
    for (ExtReal v : b.level_minima) levels.push_back(to_json(v));
    report["bounded_below"] = Json{{"verdict", to_json(b.verdict)}, {"inf_estimate", to_json(b.inf_estimate)}, {"level_minima", levels}};
  }
  report["points"] = points;
  report["status"] = xs.empty() && !o.bounded ? "vacuous" : (failed ? "fails" : "holds-on-sample");

  if (!c.plot_data.empty()) {
    PlotWriter plot(spec.dim());
    plot.function("f", f, spec.X, plan);
    for (std::size_t i = 0; i < xs.size(); ++i) plot.row("candidate", i, xs[i], f(xs[i]));
    plot.write(c.plot_data);
  }
  return report;
}

struct AuditOpts {
  std::string notion;
  double eps = 1.0, alpha = 1.0, delta = 0.5;
  bool lsc_only = false;
};

Json cmd_audit(const AuditOpts& o, const Common& c) {
  NotionId n;
  n.tag = notion_tag_from_string(o.notion);
  n.eps = o.eps;
  n.alpha = o.alpha;
  n.delta = o.delta;
  n.validate();
  const SamplePlan plan = c.plan();
  const std::vector<ProblemSpec> fixtures = load_corpus(c.corpus);
  std::string bytes;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(c.corpus))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& p : files) bytes += p.filename().string() + "\n" + read_file(p);

  const std::vector<AuditInstance> instances = audit_instances(fixtures, o.lsc_only, plan);
  if (instances.empty()) throw Error("audit corpus has no scalar instances");
  const WgmReport r = audit_notion(n, instances, plan);
  Json report = report_header("audit", bytes, plan);
  report["lsc_only"] = o.lsc_only;
  report["audit"] = to_json(r);
  return report;
}

struct EvpOpts {
  std::string spec;
  std::string at;
  double eps = 0.0;
  double lambda = 1.0;
};

Json cmd_evp(const EvpOpts& o, const Common& c) {
  const fs::path path = resolve_spec(o.spec, c);
  const std::string bytes = read_file(path);
  const ProblemSpec spec = load_problem(path);
  if (!spec.scalar()) throw Error("evp needs a problem with one objective and no constraints");
  const SamplePlan plan = plan_for(spec, c.plan());
  const PiecewiseFn& f = spec.objectives.front();
  if (!(o.eps >= 0)) throw Error("--eps must be >= 0");
  if (!(o.lambda > 0)) throw Error("--lambda must be > 0");

  Json report = report_header("evp", bytes, plan);
  report["spec"] = spec.name;
  Json certs = Json::array();
  std::optional<PlotWriter> plot;
  if (!c.plot_data.empty()) {
    plot.emplace(spec.dim());
    plot->function("f", f, spec.X, plan);
  }
  const std::vector<Point> xs = points_for(spec, o.at);
  std::size_t k = 0;
  for (const Point& x0 : xs) {
    Json entry;
    entry["premise"] = to_json(verify_evp_premise(f, spec.X, x0, o.eps, plan));
    const EvpCertificate cert = ekeland_search(f, spec.X, x0, o.eps, o.lambda, plan);
    Json cj = to_json(cert);
    cj["valid"] = cert.valid(std::max(c.tol * 1e-5, 1e-12));
    entry["certificate"] = cj;
    certs.push_back(entry);
    if (plot) {
      for (std::size_t i = 0; i < cert.trace.size(); ++i)
        plot->row("trace" + std::to_string(k), i, cert.trace[i], cert.trace_values[i]);
    }
    ++k;
  }
  report["certificates"] = certs;
  if (xs.empty()) report["status"] = "vacuous";
  if (plot) plot->write(c.plot_data);
  return report;
}

struct SubdiffOpts {
  std::string spec;
  std::string at;
  std::size_t objective = 0;
  double radius = 0.5;
};

Json cmd_subdiff(const SubdiffOpts& o, const Common& c) {
  const fs::path path = resolve_spec(o.spec, c);
  const std::string bytes = read_file(path);
  const ProblemSpec spec = load_problem(path);
  if (o.objective >= spec.objectives.size()) throw Error("--objective is out of range");
  const SamplePlan plan = plan_for(spec, c.plan());
  const PiecewiseFn& f = spec.objectives[o.objective];

  Json report = report_header("subdiff", bytes, plan);
  report["spec"] = spec.name;
  report["objective"] = o.objective;
  std::optional<PlotWriter> plot;
  if (!c.plot_data.empty()) {
    plot.emplace(spec.dim());
    plot->function("f", f, spec.X, plan);
  }
  Json points = Json::array();
  std::size_t k = 0;
  for (const Point& x : points_for(spec, o.at)) {
    const SubdiffApprox s = clarke_subdiff(f, x, plan);
    Json pj;
    pj["x"] = to_json(x);
    pj["lipschitz_estimate"] = number_json(local_lipschitz(f, x, o.radius, plan));
    pj["subdiff"] = to_json(s);
    Json dirs = Json::array();
    for (std::size_t i = 0; i < spec.dim(); ++i) {
      for (double sign : {1.0, -1.0}) {
        Point v = Point::Zero(static_cast<Eigen::Index>(spec.dim()));
        v[static_cast<Eigen::Index>(i)] = sign;
        dirs.push_back(Json{{"v", to_json(v)}, {"dirderiv", to_json(clarke_dirderiv(f, x, v, plan))}});
      }
    }
    pj["directional"] = dirs;
    if (spec.X.contains(x)) pj["normal_cone"] = to_json(normal_cone(spec.X, x));
    points.push_back(pj);
    if (plot) {
      const std::vector<Point> hull = s.hull_vertices();
      for (std::size_t i = 0; i < hull.size(); ++i) plot->row("hull" + std::to_string(k), i, hull[i], std::nullopt);
    }
    ++k;
  }
  report["points"] = points;
  if (plot) plot->write(c.plot_data);
  return report;
}

struct FjOpts {
  std::string spec;
  std::string at;
  std::vector<double> alpha;
  std::vector<double> lambda;
  std::vector<double> mu;
  double radius = 0.5;
};

Json cmd_fjcheck(const FjOpts& o, const Common& c) {
  const fs::path path = resolve_spec(o.spec, c);
  const std::string bytes = read_file(path);
  const ProblemSpec spec = load_problem(path);
  const SamplePlan plan = plan_for(spec, c.plan());
  const VectorProblem vp = spec.vector_problem();
  const std::size_t p = vp.objectives.size();

  Json report = report_header("fjcheck", bytes, plan);
  report["spec"] = spec.name;
  Json points = Json::array();
  for (const Point& x0 : points_for(spec, o.at)) {
    if (!vp.feasible(x0)) throw Error("point is not feasible");
    Json pj;
    pj["x0"] = to_json(x0);
    std::vector<double> alpha = o.alpha;
    if (alpha.size() == 1 && p > 1) alpha.assign(p, alpha.front());
    if (alpha.empty()) {
      const AlphaChoice a = alpha_from_lipschitz(vp, x0, o.radius, plan);
      alpha = a.alpha;
      pj["alpha_source"] = "lipschitz";
    }
    if (alpha.size() != p) throw Error("--alpha needs one value per objective");
    if (!o.lambda.empty() || !o.mu.empty()) {
      std::vector<double> lambda = o.lambda, mu = o.mu;
      if (lambda.empty()) lambda.assign(p, 0.0);
      if (mu.empty()) mu.assign(vp.constraints.size(), 0.0);
      const FJCertificate cert = check_fritz_john(vp, x0, alpha, lambda, mu, plan);
      pj["mode"] = "check";
      pj["success"] = cert.residual <= c.tol;
      pj["certificate"] = to_json(cert);
    } else {
      const MultiplierSearch m = find_multipliers(vp, x0, alpha, plan, c.tol);
      pj["mode"] = "search";
      pj["search"] = to_json(m);
    }
    points.push_back(pj);
  }
  report["points"] = points;
  return report;
}

Json cmd_corpus(const Common& c) {
  const SamplePlan plan = c.plan();
  const std::vector<ProblemSpec> fixtures = load_corpus(c.corpus);
  std::string bytes;
  for (const ProblemSpec& s : fixtures) bytes += s.name + "\n";
  Json report = report_header("corpus", bytes, plan);
  report["fixtures"] = fixtures.size();
  report["run"] = to_json(run_corpus(fixtures, plan));
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks approximate-minimum notions and nonsmooth optimality conditions", "approxmin"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Sampling seed");
    sub->add_option("--samples", common.samples, "Random points per ball stage");
    sub->add_option("--stages", common.stages, "Shrinking-ball stages");
    sub->add_option("--grid-res", common.grid_res, "Grid points per axis");
    sub->add_option("--tol", common.tol, "Success threshold for residual checks");
    sub->add_option("--threads", common.threads, "Worker threads (results do not depend on it)");
    sub->add_flag("--no-timings", common.no_timings, "Omit wall-clock timings from the report");
    sub->add_option("--out", common.out, "Write the report here instead of stdout");
    sub->add_option("--plot-data", common.plot_data, "Write CSV plot data here");
    sub->add_option("--corpus", common.corpus, "Fixture directory");
  };

  ClassifyOpts co;
  CLI::App* classify = app.add_subcommand("classify", "Run notion checks at the candidate points of a spec");
  classify->add_option("spec", co.spec, "Problem spec path or fixture name")->required();
  classify->add_option("--at", co.at, "Check this point (comma separated) instead of the candidates");
  classify->add_flag("--usual-min", co.usual, "Usual minimum");
  classify->add_option("--eps-min", co.eps_min, "eps-minimum with this eps");
  classify->add_option("--eps-quasi-min", co.eps_quasi, "eps-quasi-minimum with this eps");
  classify->add_option("--regular-approx", co.regular, "Regular approximate eps-solution");
  classify->add_option("--quasi-min", co.quasi_alpha, "Quasi minimum with this alpha");
  classify->add_option("--local-min", co.local_min, "Local minimum on a ball of this radius");
  classify->add_option("--local-eps-min", co.local_eps, "Local eps-minimum with this eps (radius from --delta)");
  classify->add_option("--delta", co.delta, "Radius for --local-eps-min");
  classify->add_flag("--lsc", co.lsc, "Lower semicontinuity");
  classify->add_flag("--continuity", co.continuity, "Continuity");
  classify->add_flag("--bounded-below", co.bounded, "Finite lower bound");
  classify->add_flag("--wgm-iv", co.wgm, "Deleted-neighbourhood level condition");
  add_common(classify);

  AuditOpts ao;
  CLI::App* audit = app.add_subcommand("audit", "Audit the four WGM conditions for a notion over the corpus");
  audit->add_option("notion", ao.notion, "usual-min, local-min, eps-min, local-eps-min, eps-quasi-min, regular-approx, quasi-min")
      ->required();
  audit->add_option("--eps", ao.eps, "eps parameter");
  audit->add_option("--alpha", ao.alpha, "alpha parameter");
  audit->add_option("--delta", ao.delta, "delta parameter");
  audit->add_flag("--lsc-only", ao.lsc_only, "Drop instances that are not lsc at their point");
  add_common(audit);

  EvpOpts eo;
  CLI::App* evp = app.add_subcommand("evp", "Construct and certify an Ekeland point");
  evp->add_option("spec", eo.spec, "Problem spec path or fixture name")->required();
  evp->add_option("--at", eo.at, "Start point (comma separated) instead of the candidates");
  evp->add_option("--eps", eo.eps, "eps")->required();
  evp->add_option("--lambda", eo.lambda, "lambda (default 1)");
  add_common(evp);

  SubdiffOpts so;
  CLI::App* subdiff = app.add_subcommand("subdiff", "Approximate the Clarke subdifferential");
  subdiff->add_option("spec", so.spec, "Problem spec path or fixture name")->required();
  subdiff->add_option("--at", so.at, "Point (comma separated) instead of the candidates");
  subdiff->add_option("--objective", so.objective, "Objective index");
  subdiff->add_option("--radius", so.radius, "Radius for the Lipschitz estimate");
  add_common(subdiff);

  FjOpts fo;
  CLI::App* fj = app.add_subcommand("fjcheck", "Fritz John residual or multiplier search");
  fj->add_option("spec", fo.spec, "Problem spec path or fixture name")->required();
  fj->add_option("--at", fo.at, "Point (comma separated) instead of the candidates");
  fj->add_option("--alpha", fo.alpha, "alpha per objective (default from Lipschitz estimates)")->delimiter(',');
  fj->add_option("--lambda", fo.lambda, "Objective multipliers; search when omitted")->delimiter(',');
  fj->add_option("--mu", fo.mu, "Constraint multipliers")->delimiter(',');
  fj->add_option("--radius", fo.radius, "Radius for the Lipschitz estimates");
  add_common(fj);

  CLI::App* corpus = app.add_subcommand("corpus", "Run every fixture expectation");
  add_common(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Json report;
    if (*classify) report = cmd_classify(co, common);
    else if (*audit) report = cmd_audit(ao, common);
    else if (*evp) report = cmd_evp(eo, common);
    else if (*subdiff) report = cmd_subdiff(so, common);
    else if (*fj) report = cmd_fjcheck(fo, common);
    else report = cmd_corpus(common);
    emit(std::move(report), common, start);
    return 0;
  } catch (const NonConvergenceError& e) {
    std::cerr << "approxmin: did not converge: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "approxmin: parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "approxmin: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "approxmin: internal error: " << e.what() << "\n";
    return 1;
  }
}
