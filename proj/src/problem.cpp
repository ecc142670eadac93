#include "approxmin/problem.hpp"

#include "approxmin/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace approxmin {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void schema(const std::string& what) { throw ParseError(ParseError::Code::kSchema, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  schema(where + ": expected a number");
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array");
  std::vector<double> out;
  for (const json& v : j) out.push_back(number(v, where));
  return out;
}

Point point(const json& j, const std::string& where) {
  const std::vector<double> v = numbers(j, where);
  if (v.empty()) schema(where + ": empty point");
  for (double x : v)
    if (!std::isfinite(x)) schema(where + ": point coordinates must be finite");
  return make_point(std::span<const double>(v));
}

std::vector<bool> flags(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key)) return std::vector<bool>(n, false);
  const json& a = j.at(key);
  if (!a.is_array() || a.size() != n) schema(std::string(key) + ": expected " + std::to_string(n) + " booleans");
  std::vector<bool> out;
  for (const json& b : a) {
    if (!b.is_boolean()) schema(std::string(key) + ": expected booleans");
    out.push_back(b.get<bool>());
  }
  return out;
}

DomainSet domain_from(const json& j) {
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) schema("domain kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  try {
    if (kind == "full") {
      const json& d = field(j, "dim");
      if (!d.is_number_unsigned()) schema("domain dim must be a positive integer");
      return DomainSet::full(d.get<std::size_t>());
    }
    if (kind == "box") {
      std::vector<double> lo = numbers(field(j, "lower"), "box lower");
      std::vector<double> hi = numbers(field(j, "upper"), "box upper");
      if (lo.size() != hi.size()) schema("box bounds differ in length");
      return DomainSet::box(lo, hi, flags(j, "lower_open", lo.size()), flags(j, "upper_open", lo.size()));
    }
    if (kind == "halfspace") {
      return DomainSet::halfspace(point(field(j, "normal"), "halfspace normal"), number(field(j, "offset"), "offset"));
    }
    if (kind == "ball") {
      const bool open = j.contains("open") ? j.at("open").get<bool>() : true;
      return DomainSet::ball(point(field(j, "center"), "ball center"), number(field(j, "radius"), "radius"), open);
    }
    if (kind == "intersection") {
      const json& m = field(j, "members");
      if (!m.is_array() || m.empty()) schema("intersection needs a nonempty member list");
      std::vector<DomainSet> members;
      for (const json& e : m) members.push_back(domain_from(e));
      return DomainSet::intersection(std::move(members));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    schema(std::string("domain: ") + e.what());
  } catch (const Error& e) {
    schema(std::string("domain: ") + e.what());
  }
  schema("unknown domain kind '" + kind + "'");
}

json bound_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

json domain_json(const DomainSet& X) {
  struct V {
    json operator()(const DomainSet::FullSpace& s) const { return {{"kind", "full"}, {"dim", s.dim}}; }
    json operator()(const DomainSet::Box& s) const {
      json lo = json::array(), hi = json::array();
      for (double v : s.lower) lo.push_back(bound_json(v));
      for (double v : s.upper) hi.push_back(bound_json(v));
      json out = {{"kind", "box"}, {"lower", lo}, {"upper", hi}};
      if (std::find(s.lower_open.begin(), s.lower_open.end(), true) != s.lower_open.end())
        out["lower_open"] = s.lower_open;
      if (std::find(s.upper_open.begin(), s.upper_open.end(), true) != s.upper_open.end())
        out["upper_open"] = s.upper_open;
      return out;
    }
    json operator()(const DomainSet::Halfspace& s) const {
      return {{"kind", "halfspace"}, {"normal", to_vector(s.normal)}, {"offset", s.offset}};
    }
    json operator()(const DomainSet::Ball& s) const {
      return {{"kind", "ball"}, {"center", to_vector(s.center)}, {"radius", s.radius}, {"open", s.open}};
    }
    json operator()(const DomainSet::Intersection& s) const {
      json m = json::array();
      for (const DomainSet& d : s.members) m.push_back(domain_json(d));
      return {{"kind", "intersection"}, {"members", m}};
    }
  };
  return std::visit(V{}, X.rep());
}

PiecewiseFn function_in(const std::string& text, std::size_t dim, const std::string& where) {
  PiecewiseFn f = parse_function(text);
  if (f.dim() != dim)
    throw ParseError(ParseError::Code::kDimension,
                     where + ": function has n=" + std::to_string(f.dim()) + " but the domain has dimension " +
                         std::to_string(dim));
  return f;
}

}  // namespace

double Expectation::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end() || it->second.size() != 1) throw Error("expectation '" + op + "' needs parameter '" + key + "'");
  return it->second.front();
}

double Expectation::param_or(const std::string& key, double fallback) const {
  return params.count(key) ? param(key) : fallback;
}

std::vector<double> Expectation::list_or(const std::string& key, std::vector<double> fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

ProblemSpec parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Code::kSyntax, std::string("problem spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("problem spec must be a JSON object");
  ProblemSpec spec;
  try {
    spec.name = doc.value("name", std::string{});
    spec.note = doc.value("note", std::string{});
    spec.X = domain_from(field(doc, "domain"));
    const std::size_t n = spec.X.dim();
    const json& objs = field(doc, "objectives");
    if (!objs.is_array() || objs.empty()) schema("objectives must be a nonempty list of function specs");
    for (const json& o : objs) {
      if (!o.is_string()) schema("objectives must be strings");
      spec.objective_texts.push_back(o.get<std::string>());
      spec.objectives.push_back(function_in(spec.objective_texts.back(), n, "objective"));
    }
    if (doc.contains("constraints")) {
      const json& cons = doc.at("constraints");
      if (!cons.is_array()) schema("constraints must be a list");
      for (const json& c : cons) {
        if (!c.is_string()) schema("constraints must be strings");
        spec.constraint_texts.push_back(c.get<std::string>());
        spec.constraints.push_back(function_in(spec.constraint_texts.back(), n, "constraint"));
      }
    }
    const json& cands = field(doc, "candidates");
    if (!cands.is_array()) schema("candidates must be a list of points");
    for (const json& c : cands) {
      Point p = point(c, "candidate");
      if (static_cast<std::size_t>(p.size()) != n)
        throw ParseError(ParseError::Code::kDimension, "candidate dimension does not match the domain");
      spec.candidates.push_back(std::move(p));
    }
    if (doc.contains("window")) {
      const json& w = doc.at("window");
      Window win{point(field(w, "lower"), "window lower"), point(field(w, "upper"), "window upper")};
      if (static_cast<std::size_t>(win.lower.size()) != n || static_cast<std::size_t>(win.upper.size()) != n)
        throw ParseError(ParseError::Code::kDimension, "window dimension does not match the domain");
      spec.window = std::move(win);
    }
    if (doc.contains("expect")) {
      for (const json& e : doc.at("expect")) {
        Expectation ex;
        ex.op = field(e, "op").get<std::string>();
        ex.candidate = e.value("candidate", std::size_t{0});
        ex.status = field(e, "status").get<std::string>();
        if (e.contains("params")) {
          for (const auto& [k, v] : e.at("params").items()) {
            ex.params[k] = v.is_array() ? numbers(v, k) : std::vector<double>{number(v, k)};
          }
        }
        if (ex.candidate >= spec.candidates.size() && !spec.candidates.empty())
          schema("expectation '" + ex.op + "' refers to a missing candidate");
        spec.expect.push_back(std::move(ex));
      }
    }
  } catch (const json::exception& e) {
    schema(std::string("problem spec: ") + e.what());
  }
  return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_problem(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.code(), path.string() + ":" + e.what());
  }
}

DomainSet parse_domain(const std::string& json_text) {
  try {
    return domain_from(json::parse(json_text));
  } catch (const json::parse_error& e) {
    throw ParseError(ParseError::Code::kSyntax, std::string("domain is not valid JSON: ") + e.what());
  }
}

std::string domain_to_json(const DomainSet& X) { return domain_json(X).dump(); }

}  // namespace approxmin
