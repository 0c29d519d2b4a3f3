#include "pathlift/cube_lift.hpp"
#include "pathlift/errors.hpp"
#include "pathlift/path_lift.hpp"
#include "pathlift/selftest.hpp"
#include "pathlift/serialize.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pathlift;

// Rationals cross the boundary as fractions.Fraction. Ints and "p/q"
// strings are accepted on input; floats are rejected.
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr())) return false;
    const auto fraction = module_::import("fractions").attr("Fraction");
    std::string text;
    if (PyLong_Check(src.ptr()) || isinstance(src, fraction)) {
      text = py::str(src);
    } else if (PyUnicode_Check(src.ptr())) {
      text = src.cast<std::string>();
    } else {
      return false;
    }
    value = parse_rational(text);
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    return module_::import("fractions").attr("Fraction")(to_string(r)).release();
  }
};
}  // namespace pybind11::detail

namespace {

using Intervals = std::vector<std::pair<Rational, Rational>>;

omega::IntervalSet to_set(const Intervals& ivs) {
  std::vector<omega::Interval> out;
  for (const auto& [l, r] : ivs) out.push_back({l, r});
  return omega::IntervalSet(std::move(out));
}

Intervals from_set(const omega::IntervalSet& set) {
  Intervals out;
  for (const auto& iv : set.intervals()) out.emplace_back(iv.left, iv.right);
  return out;
}

SimpleRandomVariable make_rv(const SpacePtr& space, const std::map<std::string, Intervals>& blocks) {
  std::vector<omega::IntervalSet> sets(space->size());
  for (const auto& [name, ivs] : blocks) sets[space->index_of(name)] = to_set(ivs);
  return SimpleRandomVariable(space, std::move(sets));
}

std::map<std::string, Intervals> rv_blocks(const SimpleRandomVariable& x) {
  std::map<std::string, Intervals> out;
  for (std::size_t i = 0; i < x.space()->size(); ++i) {
    if (!x.block(i).empty()) out[x.space()->points()[i]] = from_set(x.block(i));
  }
  return out;
}

py::dict certificate_dict(const Certificate& c) {
  py::dict d;
  d["grid"] = c.grid;
  d["law_gaps"] = c.law_gaps;
  d["max_law_gap"] = c.max_law_gap;
  d["continuity_table"] = c.continuity_table;
  d["min_piece_length"] = c.min_piece_length;
  d["continuity_bound"] = c.continuity_bound;
  d["start_ok"] = c.start_ok;
  d["end_ok"] = c.end_ok;
  d["decay_table"] = c.decay_table;
  d["decay_budget"] = c.decay_budget;
  d["decay_within_budget"] = c.decay_within_budget();
  return d;
}

}  // namespace

PYBIND11_MODULE(_pathlift, m) {
  m.doc() = "Exact liftings of paths of probability measures on finite metric spaces";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<FiniteMetricSpace, std::shared_ptr<FiniteMetricSpace>>(m, "MetricSpace")
      .def(py::init([](std::vector<std::string> points, RationalMatrix dist) {
             return std::const_pointer_cast<FiniteMetricSpace>(
                 FiniteMetricSpace::create(std::move(points), std::move(dist)));
           }),
           py::arg("points"), py::arg("dist"))
      .def_property_readonly("points", &FiniteMetricSpace::points)
      .def_property_readonly("dist", py::overload_cast<>(&FiniteMetricSpace::dist, py::const_))
      .def("__len__", &FiniteMetricSpace::size)
      .def("index_of", &FiniteMetricSpace::index_of);

  py::class_<Measure>(m, "Measure")
      .def(py::init([](std::shared_ptr<FiniteMetricSpace> s, std::vector<Rational> w) {
             return Measure(std::move(s), std::move(w));
           }),
           py::arg("space"), py::arg("weights"))
      .def_static(
          "dirac", [](std::shared_ptr<FiniteMetricSpace> s, std::size_t i) { return Measure::dirac(s, i); },
          py::arg("space"), py::arg("point"))
      .def_property_readonly("weights", &Measure::weights)
      .def_property_readonly("space", [](const Measure& mu) { return std::const_pointer_cast<FiniteMetricSpace>(mu.space()); })
      .def("__eq__", [](const Measure& a, const Measure& b) { return a == b; })
      .def("__repr__", [](const Measure& mu) { return "Measure(" + io::to_json(mu)["weights"].dump() + ")"; });

  py::class_<SimpleRandomVariable>(m, "RandomVariable")
      .def(py::init([](std::shared_ptr<FiniteMetricSpace> s, const std::map<std::string, Intervals>& blocks) {
             return make_rv(s, blocks);
           }),
           py::arg("space"), py::arg("blocks"))
      .def_property_readonly("blocks", &rv_blocks)
      .def_property_readonly("space", [](const SimpleRandomVariable& x) { return std::const_pointer_cast<FiniteMetricSpace>(x.space()); })
      .def("law", [](const SimpleRandomVariable& x) { return law(x); })
      .def("__eq__", [](const SimpleRandomVariable& a, const SimpleRandomVariable& b) { return a == b; })
      .def("__repr__", [](const SimpleRandomVariable& x) { return "RandomVariable(" + io::to_json(x)["blocks"].dump() + ")"; });

  py::class_<PolygonalPath>(m, "PolygonalPath")
      .def(py::init<std::vector<Rational>, std::vector<Measure>>(), py::arg("breakpoints"), py::arg("vertices"))
      .def_property_readonly("breakpoints", &PolygonalPath::breakpoints)
      .def_property_readonly("vertices", &PolygonalPath::vertices)
      .def("__call__", &PolygonalPath::eval, py::arg("t"));

  py::class_<SampledPath>(m, "SampledPath")
      .def(py::init([](std::shared_ptr<FiniteMetricSpace> s, SampledPath::Sampler f, Rational lip) {
             return SampledPath(std::move(s), std::move(f), std::move(lip));
           }),
           py::arg("space"), py::arg("sampler"), py::arg("lipschitz"))
      .def_static("from_polygonal", &SampledPath::from_polygonal, py::arg("path"), py::arg("lipschitz"))
      .def_property_readonly("lipschitz", &SampledPath::lipschitz)
      .def_property_readonly("queried_count", &SampledPath::queried_count)
      .def("__call__", &SampledPath::operator(), py::arg("t"));

  py::class_<LiftedPath>(m, "LiftedPath")
      .def_property_readonly("breakpoints", &LiftedPath::breakpoints)
      .def_property_readonly("vertices", &LiftedPath::vertices)
      .def("__call__", &LiftedPath::eval, py::arg("t"))
      .def("to_json", [](const LiftedPath& lift) { return io::to_json(lift).dump(); });

  py::class_<CubeInterpolation>(m, "CubeInterpolation")
      .def(py::init<std::vector<Measure>>(), py::arg("corners"))
      .def_property_readonly("dimension", &CubeInterpolation::dimension)
      .def("__call__", [](const CubeInterpolation& c, const std::vector<Rational>& p) { return g_eval(c, p); })
      .def("lift", [](const CubeInterpolation& c, const std::vector<Rational>& p) { return g_lift_eval(c, p); });

  m.def("total_variation", &total_variation);
  m.def(
      "prokhorov",
      [](const Measure& mu, const Measure& nu) {
        auto r = prokhorov_coupling(mu, nu);
        return py::make_tuple(r.distance, r.coupling.mass());
      },
      py::arg("mu"), py::arg("nu"), "Prokhorov distance and an optimal coupling matrix.");
  m.def("prokhorov_subsets", &prokhorov_subsets, py::arg("mu"), py::arg("nu"));
  m.def("kyfan", &kyfan_rho, py::arg("x"), py::arg("y"));
  m.def("joint_mass", &joint_mass, py::arg("x"), py::arg("y"));
  m.def("match_to_law", &match_to_law, py::arg("x"), py::arg("target"));
  m.def("canonical_rv", &canonical_rv, py::arg("law"));
  m.def(
      "segment",
      [](const SimpleRandomVariable& x, const SimpleRandomVariable& y, const Rational& t, const Rational& a,
         const Rational& b) { return SegmentLift(x, y, a, b).eval(t); },
      py::arg("x"), py::arg("y"), py::arg("t"), py::arg("a") = Rational(0), py::arg("b") = Rational(1));
  m.def("lift_polygonal", &lift_polygonal, py::arg("path"), py::arg("start"), py::arg("end"));
  m.def("approximate_polygonal", &approximate_polygonal, py::arg("alpha"), py::arg("epsilon"));
  m.def(
      "relift",
      [](const LiftedPath& prev, const PolygonalPath& path, const Rational& eps, std::size_t grid) {
        auto r = relift_near(prev, path, eps, grid);
        return py::make_tuple(std::move(r.lift), r.sup_rho);
      },
      py::arg("prev"), py::arg("path"), py::arg("epsilon"), py::arg("grid") = kDefaultGridPoints);
  m.def(
      "lift_path",
      [](const SampledPath& alpha, const SimpleRandomVariable& start, const SimpleRandomVariable& end,
         const Rational& tol, std::size_t iterations, std::size_t grid) {
        auto r = lift_path(alpha, start, end, tol, iterations, grid);
        return py::make_tuple(std::move(r.lift), std::move(r.polygonal), certificate_dict(r.certificate));
      },
      py::arg("alpha"), py::arg("start"), py::arg("end"), py::arg("tol"), py::arg("iterations") = 3,
      py::arg("grid") = kDefaultGridPoints);
  m.def(
      "verify",
      [](const LiftedPath& lift, const PolygonalPath& target, std::size_t grid) {
        return certificate_dict(verify_lift(lift, target, grid));
      },
      py::arg("lift"), py::arg("target"), py::arg("grid") = kDefaultGridPoints);
  m.def(
      "selftest", [](std::uint64_t seed, std::size_t scale) { return run_selftest(seed, scale).summary(); },
      py::arg("seed") = 0, py::arg("scale") = 1);
}
