#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bvq/interval_calculus.hpp"
#include "bvq/report.hpp"
#include "bvq/rigidity.hpp"
#include "bvq/segmentation.hpp"
#include "bvq/verify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using bvq::Interval;
using bvq::Signal;

namespace {

// reports go through the JSON emitters so python sees the same records as the CLI
py::object to_py(const nlohmann::ordered_json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

bvq::Interpolation parse_mode(const std::string& mode) {
  if (mode == "linear") return bvq::Interpolation::PiecewiseLinear;
  if (mode == "constant") return bvq::Interpolation::PiecewiseConstant;
  throw bvq::Error(bvq::ErrorKind::ParseError, "mode must be 'linear' or 'constant'");
}

py::dict stats_dict(const bvq::IntervalStats& s) {
  return py::dict("mean"_a = s.mean, "osc"_a = s.oscillation, "tv"_a = s.total_variation, "R"_a = s.level_balance,
                  "quotient"_a = s.quotient ? py::object(py::float_(*s.quotient)) : py::object(py::none()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Oscillation / total-variation quotients of one-dimensional signals";

  py::register_exception<bvq::Error>(m, "BvqError", PyExc_ValueError);

  py::class_<Signal>(m, "Signal")
      .def_static(
          "from_samples",
          [](std::vector<double> x, std::vector<double> y, const std::string& mode) {
            return Signal(bvq::SampledSignal(std::move(x), std::move(y), parse_mode(mode)));
          },
          "x"_a, "y"_a, "mode"_a = "linear")
      .def_static(
          "from_json", [](const std::string& text) { return Signal(bvq::parse_signal(text)); }, "descriptor"_a)
      .def_static(
          "from_csv", [](const std::string& path, const std::string& mode) { return Signal(bvq::read_csv(path, parse_mode(mode))); },
          "path"_a, "mode"_a = "linear")
      .def_property_readonly("domain", [](const Signal& f) { return py::make_tuple(f.domain().lo, f.domain().hi); })
      .def("__call__", [](const Signal& f, double x) { return bvq::evaluate(f, x); });

  m.def("interval_stats", [](const Signal& f, double lo, double hi) { return stats_dict(bvq::interval_stats(f, {lo, hi})); },
        "f"_a, "lo"_a, "hi"_a);
  m.def("measure_extension_defect",
        [](const Signal& f, double lo, double hi, double split) { return bvq::measure_extension_defect(f, {lo, hi}, split); },
        "f"_a, "lo"_a, "hi"_a, "split"_a);
  m.def("quotient_map",
        [](const Signal& f, std::vector<double> scales, double stride) { return to_py(bvq::to_json(bvq::quotient_map(f, scales, stride))); },
        "f"_a, "scales"_a, "stride"_a);
  m.def(
      "segment",
      [](const Signal& f, std::vector<double> scales, double stride, double tol) {
        bvq::ClassifyOptions opt;
        opt.tol = tol;
        return to_py(bvq::to_json(bvq::classify_segments(f, bvq::quotient_map(f, scales, stride), opt)));
      },
      "f"_a, "scales"_a, "stride"_a, "tol"_a = 1e-3);
  m.def(
      "osc_derivative_rhs", [](const Signal& f, double x, double y) { return bvq::osc_derivative_rhs(f, x, y); }, "f"_a,
      "x"_a, "y"_a);

  m.def("power_quotient", &bvq::power_quotient, "s"_a);
  m.def("phi", &bvq::phi, "s"_a, "a"_a, "b"_a);
  m.def("exponent_function", &bvq::exponent_function, "s"_a);
  m.def("exponent_equation_solve", &bvq::exponent_equation_solve, "lo"_a, "hi"_a, "tol"_a = 1e-12);
  m.def("ode_family_check", [](double A, double B, double lo, double hi, int probes) {
    return bvq::ode_family_check(A, B, {lo, hi}, probes);
  }, "A"_a, "B"_a, "lo"_a, "hi"_a, "probes"_a = 100);

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, std::optional<double> tol, double s) {
        bvq::VerifyOptions opt;
        opt.seed = seed;
        opt.tol = tol;
        opt.exponent = s;
        return to_py(bvq::to_json(bvq::run_verification(suite, opt)));
      },
      "suite"_a = "all", "seed"_a = 0, "tol"_a = py::none(), "s"_a = 2.5);
}
