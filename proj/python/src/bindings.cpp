#include "approxmin/cone.hpp"
#include "approxmin/corpus.hpp"
#include "approxmin/error.hpp"
#include "approxmin/evp.hpp"
#include "approxmin/min_norm.hpp"
#include "approxmin/minima.hpp"
#include "approxmin/nonsmooth.hpp"
#include "approxmin/optcond.hpp"
#include "approxmin/problem.hpp"
#include "approxmin/report.hpp"
#include "approxmin/vectopt.hpp"
#include "approxmin/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace approxmin;

namespace {

using Vec = std::vector<double>;

Point to_point(const Vec& x) { return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())); }

Vec from_point(const Point& p) { return Vec(p.data(), p.data() + p.size()); }

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

NotionId notion(const std::string& name, double eps, double alpha, double delta) {
  NotionId n{notion_tag_from_string(name), eps, alpha, delta};
  n.validate();
  return n;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sampling-based checks for approximate minima";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "ApproxminError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NotLipschitzError>(m, "NotLipschitzError", base.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
  py::register_exception<EmptySetError>(m, "EmptySetError", base.ptr());

  py::class_<SamplePlan>(m, "SamplePlan")
      .def(py::init<>())
      .def_readwrite("seed", &SamplePlan::seed)
      .def_readwrite("samples", &SamplePlan::samples)
      .def_readwrite("radius0", &SamplePlan::radius0)
      .def_readwrite("ratio", &SamplePlan::ratio)
      .def_readwrite("stages", &SamplePlan::stages)
      .def_readwrite("steps", &SamplePlan::steps)
      .def_readwrite("grid_res", &SamplePlan::grid_res)
      .def_readwrite("expand_levels", &SamplePlan::expand_levels)
      .def_readwrite("threads", &SamplePlan::threads)
      .def_property(
          "window",
          [](const SamplePlan& p) -> std::optional<std::pair<Vec, Vec>> {
            if (!p.window) return std::nullopt;
            return std::pair{from_point(p.window->lower), from_point(p.window->upper)};
          },
          [](SamplePlan& p, const std::optional<std::pair<Vec, Vec>>& w) {
            if (w) p.window = Window{to_point(w->first), to_point(w->second)};
            else p.window.reset();
          })
      .def("validate", &SamplePlan::validate)
      .def("to_dict", [](const SamplePlan& p) { return to_py(to_json(p)); });

  py::class_<PiecewiseFn>(m, "Function")
      .def(py::init([](const std::string& text) { return parse_function(text); }), py::arg("text"))
      .def_property_readonly("dim", &PiecewiseFn::dim)
      .def("__call__", [](const PiecewiseFn& f, const Vec& x) { return f(to_point(x)).value(); }, py::arg("x"))
      .def("__str__", &PiecewiseFn::to_string);

  py::class_<DomainSet>(m, "Domain")
      .def_static("full", &DomainSet::full, py::arg("dim"))
      .def_static("box", [](Vec lo, Vec hi) { return DomainSet::box(std::move(lo), std::move(hi)); }, py::arg("lower"),
                  py::arg("upper"))
      .def_static("interval", &DomainSet::interval, py::arg("lower"), py::arg("upper"))
      .def_static("halfspace", [](const Vec& a, double b) { return DomainSet::halfspace(to_point(a), b); },
                  py::arg("normal"), py::arg("offset"))
      .def_static("ball", [](const Vec& c, double r, bool open) { return DomainSet::ball(to_point(c), r, open); },
                  py::arg("center"), py::arg("radius"), py::arg("open") = true)
      .def_static("intersection", &DomainSet::intersection, py::arg("members"))
      .def_static("from_json", &parse_domain, py::arg("text"))
      .def_property_readonly("dim", &DomainSet::dim)
      .def("contains", [](const DomainSet& X, const Vec& x) { return X.contains(to_point(x)); }, py::arg("x"))
      .def("to_json", &domain_to_json)
      .def("__and__", [](const DomainSet& a, const DomainSet& b) { return a & b; });

  py::class_<VectorProblem>(m, "VectorProblem")
      .def(py::init<std::vector<PiecewiseFn>, std::vector<PiecewiseFn>, DomainSet>(), py::arg("objectives"),
           py::arg("constraints"), py::arg("domain"))
      .def_property_readonly("dim", &VectorProblem::dim)
      .def("feasible", [](const VectorProblem& v, const Vec& x) { return v.feasible(to_point(x)); }, py::arg("x"));

  const auto plan_arg = py::arg("plan") = SamplePlan{};

  m.def(
      "check_notion",
      [](const std::string& name, const PiecewiseFn& f, const DomainSet& X, const Vec& x0, double eps, double alpha,
         double delta, const SamplePlan& plan) {
        return to_py(to_json(check_notion(notion(name, eps, alpha, delta), f, X, to_point(x0), plan)));
      },
      py::arg("notion"), py::arg("f"), py::arg("domain"), py::arg("x0"), py::arg("eps") = 0.0, py::arg("alpha") = 0.0,
      py::arg("delta") = 0.0, plan_arg);
  m.def(
      "check_lsc",
      [](const PiecewiseFn& f, const Vec& x0, const std::optional<DomainSet>& X, const SamplePlan& plan) {
        return to_py(to_json(check_lsc(f, to_point(x0), plan, X)));
      },
      py::arg("f"), py::arg("x0"), py::arg("domain") = py::none(), plan_arg);
  m.def(
      "check_continuity",
      [](const PiecewiseFn& f, const Vec& x0, const std::optional<DomainSet>& X, const SamplePlan& plan) {
        return to_py(to_json(check_continuity(f, to_point(x0), plan, X)));
      },
      py::arg("f"), py::arg("x0"), py::arg("domain") = py::none(), plan_arg);
  m.def(
      "check_bounded_below",
      [](const PiecewiseFn& f, const DomainSet& X, const SamplePlan& plan) {
        return to_py(to_json(check_bounded_below(f, X, plan).verdict));
      },
      py::arg("f"), py::arg("domain"), plan_arg);

  m.def(
      "local_lipschitz",
      [](const PiecewiseFn& f, const Vec& x, double radius, const SamplePlan& plan) {
        return local_lipschitz(f, to_point(x), radius, plan);
      },
      py::arg("f"), py::arg("x"), py::arg("radius"), plan_arg);
  m.def(
      "clarke_dirderiv",
      [](const PiecewiseFn& f, const Vec& x, const Vec& v, const SamplePlan& plan) {
        return to_py(to_json(clarke_dirderiv(f, to_point(x), to_point(v), plan)));
      },
      py::arg("f"), py::arg("x"), py::arg("v"), plan_arg);
  m.def(
      "clarke_subdiff",
      [](const PiecewiseFn& f, const Vec& x, const SamplePlan& plan) {
        return to_py(to_json(clarke_subdiff(f, to_point(x), plan)));
      },
      py::arg("f"), py::arg("x"), plan_arg);
  m.def(
      "normal_cone", [](const DomainSet& X, const Vec& x) { return to_py(to_json(normal_cone(X, to_point(x)))); },
      py::arg("domain"), py::arg("x"));
  m.def(
      "tangent_cone", [](const DomainSet& X, const Vec& x) { return to_py(to_json(tangent_cone(X, to_point(x)))); },
      py::arg("domain"), py::arg("x"));

  m.def(
      "verify_evp_premise",
      [](const PiecewiseFn& f, const DomainSet& X, const Vec& x0, double eps, const SamplePlan& plan) {
        return to_py(to_json(verify_evp_premise(f, X, to_point(x0), eps, plan)));
      },
      py::arg("f"), py::arg("domain"), py::arg("x0"), py::arg("eps"), plan_arg);
  m.def(
      "ekeland_search",
      [](const PiecewiseFn& f, const DomainSet& X, const Vec& x0, double eps, double lambda, const SamplePlan& plan) {
        return to_py(to_json(ekeland_search(f, X, to_point(x0), eps, lambda, plan)));
      },
      py::arg("f"), py::arg("domain"), py::arg("x0"), py::arg("eps"), py::arg("lam") = 1.0, plan_arg);

  m.def(
      "check_efficient",
      [](const VectorProblem& vp, const Vec& x0, double delta, const SamplePlan& plan) {
        return to_py(to_json(check_efficient(vp, to_point(x0), delta, plan)));
      },
      py::arg("problem"), py::arg("x0"), py::arg("delta") = kGlobal, plan_arg);
  m.def(
      "check_quasi_efficient",
      [](const VectorProblem& vp, const Vec& x0, const Vec& alpha, double delta, const SamplePlan& plan) {
        return to_py(to_json(check_quasi_efficient(vp, to_point(x0), alpha, delta, plan)));
      },
      py::arg("problem"), py::arg("x0"), py::arg("alpha"), py::arg("delta") = kGlobal, plan_arg);
  m.def(
      "alpha_from_lipschitz",
      [](const VectorProblem& vp, const Vec& x0, double radius, const SamplePlan& plan) {
        const AlphaChoice a = alpha_from_lipschitz(vp, to_point(x0), radius, plan);
        py::dict d;
        d["alpha"] = a.alpha;
        d["lipschitz"] = a.lipschitz;
        d["delta"] = a.delta;
        return d;
      },
      py::arg("problem"), py::arg("x0"), py::arg("radius") = 0.5, plan_arg);
  m.def(
      "check_fritz_john",
      [](const VectorProblem& vp, const Vec& x0, const Vec& alpha, const Vec& lambda, const Vec& mu,
         const SamplePlan& plan) {
        return to_py(to_json(check_fritz_john(vp, to_point(x0), alpha, lambda, mu, plan)));
      },
      py::arg("problem"), py::arg("x0"), py::arg("alpha"), py::arg("lam"), py::arg("mu"), plan_arg);
  m.def(
      "find_multipliers",
      [](const VectorProblem& vp, const Vec& x0, const Vec& alpha, const SamplePlan& plan, double threshold) {
        return to_py(to_json(find_multipliers(vp, to_point(x0), alpha, plan, threshold)));
      },
      py::arg("problem"), py::arg("x0"), py::arg("alpha"), plan_arg, py::arg("threshold") = 1e-4);
  m.def(
      "composite_set_distance",
      [](const std::vector<std::pair<double, std::vector<Vec>>>& polys, double radius,
         const std::vector<Vec>& generators, std::size_t dim) {
        std::vector<WeightedPolytope> ps;
        for (const auto& [w, verts] : polys) {
          WeightedPolytope p{w, {}};
          for (const Vec& v : verts) p.vertices.push_back(to_point(v));
          ps.push_back(std::move(p));
        }
        std::vector<Point> gens;
        for (const Vec& g : generators) gens.push_back(to_point(g));
        const MinNormResult r = composite_set_distance(ps, radius, cone_from_generators(dim, gens));
        py::dict d;
        d["distance"] = r.distance;
        d["point"] = from_point(r.point);
        d["converged"] = r.converged;
        return d;
      },
      py::arg("polytopes"), py::arg("radius"), py::arg("generators"), py::arg("dim"));

  m.def(
      "run_corpus",
      [](const std::filesystem::path& dir, const SamplePlan& plan) {
        CorpusRun r;
        {
          py::gil_scoped_release release;
          r = run_corpus(load_corpus(dir), plan);
        }
        return to_py(to_json(r));
      },
      py::arg("directory"), plan_arg);
  m.def(
      "audit",
      [](const std::string& name, const std::filesystem::path& dir, double eps, double alpha, double delta,
         bool lsc_only, const SamplePlan& plan) {
        const NotionId n = notion(name, eps, alpha, delta);
        WgmReport r;
        {
          py::gil_scoped_release release;
          const std::vector<ProblemSpec> fixtures = load_corpus(dir);
          r = audit_notion(n, audit_instances(fixtures, lsc_only, plan), plan);
        }
        return to_py(to_json(r));
      },
      py::arg("notion"), py::arg("directory"), py::arg("eps") = 1.0, py::arg("alpha") = 1.0, py::arg("delta") = 0.5,
      py::arg("lsc_only") = false, plan_arg);
}
