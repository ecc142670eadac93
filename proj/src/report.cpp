#include "approxmin/report.hpp"

#include "approxmin/error.hpp"
#include "approxmin/version.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>

namespace approxmin {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

Json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

Json to_json(ExtReal v) { return number_json(v.value()); }

Json to_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(number_json(p[i]));
  return a;
}

Json to_json(const Window& w) { return Json{{"lower", to_json(w.lower)}, {"upper", to_json(w.upper)}}; }

Json to_json(const SamplePlan& plan) {
  Json j;
  j["seed"] = plan.seed;
  j["samples"] = plan.samples;
  j["radius0"] = plan.radius0;
  j["ratio"] = plan.ratio;
  j["stages"] = plan.stages;
  j["steps"] = plan.steps;
  j["grid_res"] = plan.grid_res;
  j["expand_levels"] = plan.expand_levels;
  j["window"] = plan.window ? to_json(*plan.window) : Json(nullptr);
  return j;
}

Json to_json(const Witness& w) {
  Json values;
  for (const auto& [k, v] : w.values) values[k] = to_json(v);
  return Json{{"point", to_json(w.point)}, {"values", values}};
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  j["samples"] = v.samples;
  j["violations"] = v.violations;
  j["tolerance"] = number_json(v.tolerance);
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.details.empty()) {
    Json d = Json::array();
    for (const auto& [k, x] : v.details) d.push_back(Json{{"name", k}, {"value", number_json(x)}});
    j["details"] = d;
  }
  return j;
}

Json to_json(const NotionId& n) {
  Json j;
  j["notion"] = to_string(n.tag);
  switch (n.tag) {
    case NotionTag::kEpsMin:
    case NotionTag::kEpsQuasiMin:
    case NotionTag::kRegularApprox:
      j["eps"] = n.eps;
      break;
    case NotionTag::kLocalEpsMin:
      j["eps"] = n.eps;
      j["delta"] = n.delta;
      break;
    case NotionTag::kLocalMin:
      j["delta"] = n.delta;
      break;
    case NotionTag::kQuasiMinAlpha:
      j["alpha"] = n.alpha;
      break;
    case NotionTag::kUsualMin:
      break;
  }
  return j;
}

Json to_json(const WgmReport& r) {
  Json j;
  j["notion"] = to_json(r.notion);
  j["qualified"] = r.qualified;
  Json conds = Json::array();
  static const char* labels[] = {"i", "ii", "iii", "iv"};
  for (std::size_t k = 0; k < r.conditions.size(); ++k) {
    const ConditionReport& c = r.conditions[k];
    Json cj;
    cj["condition"] = labels[k];
    cj["outcome"] = to_string(c.outcome);
    cj["fixtures"] = c.fixtures;
    cj["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
    if (!c.note.empty()) cj["note"] = c.note;
    conds.push_back(cj);
  }
  j["conditions"] = conds;
  Json inst = Json::array();
  for (const InstanceOutcome& o : r.instances) {
    inst.push_back(Json{{"name", o.name},
                        {"x0", to_json(o.x0)},
                        {"accepted", o.accepted},
                        {"usual_min", o.usual_min},
                        {"bounded_below", o.bounded_below},
                        {"continuous", o.continuous},
                        {"lsc", o.lsc},
                        {"wgm_iv", o.wgm_iv}});
  }
  j["instances"] = inst;
  return j;
}

Json to_json(const EvpCertificate& c) {
  Json j;
  j["valid"] = c.valid();
  j["eps"] = c.eps;
  j["lambda"] = c.lambda;
  j["x0"] = to_json(c.x0);
  j["x_lambda"] = to_json(c.x_lambda);
  j["f_x0"] = to_json(c.f_x0);
  j["f_x_lambda"] = to_json(c.f_x_lambda);
  j["check_i"] = number_json(c.residual_i);
  j["check_ii"] = number_json(c.distance_ii);
  j["check_iii"] = number_json(c.violation_iii);
  j["grid_resolution"] = c.grid_resolution;
  j["grid_points"] = c.grid_points;
  j["trivial"] = c.trivial;
  if (!c.note.empty()) j["note"] = c.note;
  Json trace = Json::array();
  for (std::size_t i = 0; i < c.trace.size(); ++i)
    trace.push_back(Json{{"x", to_json(c.trace[i])}, {"f", to_json(c.trace_values[i])}});
  j["trace"] = trace;
  return j;
}

Json to_json(const DirDeriv& d) {
  Json s = Json::array();
  for (double v : d.stage_values) s.push_back(number_json(v));
  return Json{{"value", number_json(d.value)}, {"converged", d.converged}, {"diverging", d.diverging}, {"stage_values", s}};
}

Json to_json(const SubdiffApprox& s) {
  Json hull = Json::array();
  for (const Point& p : s.hull_vertices()) hull.push_back(to_json(p));
  return Json{{"base", to_json(s.base)},
              {"radius", s.radius},
              {"gradients", s.gradients.size()},
              {"hull", hull}};
}

Json to_json(const ConeRep& c) {
  static const char* kinds[] = {"full", "polyhedral", "trivial"};
  Json g = Json::array();
  for (const Point& p : c.generators) g.push_back(to_json(p));
  return Json{{"kind", kinds[static_cast<int>(c.kind)]}, {"dim", c.dim}, {"generators", g}};
}

Json to_json(const FJCertificate& c) {
  Json j;
  j["lambda"] = c.lambda;
  j["mu"] = c.mu;
  j["alpha"] = c.alpha;
  j["residual"] = number_json(c.residual);
  j["converged"] = c.converged;
  j["slackness"] = c.slackness;
  Json of = Json::array(), cf = Json::array();
  for (const SubdiffApprox& s : c.objective_subdiffs) of.push_back(to_json(s));
  for (const SubdiffApprox& s : c.constraint_subdiffs) cf.push_back(to_json(s));
  j["objective_subdiffs"] = of;
  j["constraint_subdiffs"] = cf;
  j["normal_cone"] = to_json(c.normal_cone);
  return j;
}

Json to_json(const MultiplierSearch& m) {
  return Json{{"success", m.success}, {"threshold", m.threshold}, {"candidates", m.candidates}, {"best", to_json(m.best)}};
}

Json to_json(const CorpusRun& r) {
  Json rows = Json::array();
  for (const ExpectationResult& e : r.rows) {
    rows.push_back(Json{{"fixture", e.fixture},
                        {"op", e.op},
                        {"candidate", e.candidate},
                        {"expected", e.expected},
                        {"actual", e.actual},
                        {"pass", e.pass}});
  }
  return Json{{"passed", r.passed}, {"failed", r.failed}, {"rows", rows}};
}

Json report_header(const std::string& command, const std::string& input_bytes, const SamplePlan& plan) {
  Json j;
  j["tool"] = "approxmin";
  j["version"] = kVersion;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["input_sha256"] = sha256_hex(input_bytes);
  j["plan"] = to_json(plan);
  return j;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace approxmin
