// Python view of the library: shifts are loaded from YAML documents, words
// travel as strings in the alphabet's text form.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "symdyn/cli.hpp"
#include "symdyn/entropy.hpp"
#include "symdyn/errors.hpp"
#include "symdyn/language.hpp"
#include "symdyn/properties.hpp"
#include "symdyn/report.hpp"
#include "symdyn/spec_io.hpp"

namespace py = pybind11;
using namespace symdyn;

namespace {

std::string membership(const Membership& m) { return m.is_in() ? "in" : m.is_out() ? "out" : "unknown"; }

py::dict verdict_dict(const Shift& s, const PropertyVerdict& v) {
  py::dict d;
  d["status"] = to_string(v.status);
  d["property"] = v.property;
  py::list witness;
  for (const auto& w : v.witness) witness.append(format_word(s.alphabet(), w));
  d["witness"] = witness;
  d["reason"] = v.reason;
  d["instances"] = v.instances;
  return d;
}

}  // namespace

PYBIND11_MODULE(_symdyn, m) {
  m.doc() = "Subshift languages, one-sided almost specification checks and entropy tools";
  m.attr("__version__") = kToolVersion;

  py::class_<Shift>(m, "Shift")
      .def_property_readonly("name", &Shift::name)
      .def_property_readonly("fingerprint", &Shift::fingerprint)
      .def_property_readonly("alphabet", [](const Shift& s) { return s.alphabet().names(); })
      .def("contains", [](const Shift& s, const std::string& w) { return membership(s.contains(parse_word(s.alphabet(), w))); })
      .def("words",
           [](const Shift& s, std::size_t n) {
             std::vector<std::string> out;
             for (const auto& w : enumerate_language(s, n).words) out.push_back(format_word(s.alphabet(), w));
             return out;
           })
      .def("counts",
           [](const Shift& s, std::size_t n_max) {
             std::vector<std::uint64_t> out;
             for (const auto& r : count_language(s, n_max)) out.push_back(r.certain);
             return out;
           })
      .def("entropy_estimates",
           [](const Shift& s, std::size_t n_max) {
             std::vector<double> out;
             for (const auto& r : entropy_report(s, n_max).rows) out.push_back(r.estimate);
             return out;
           })
      .def("exact_entropy", [](const Shift& s) { return exact_entropy(s); })
      .def(
          "check_las",
          [](const Shift& s, const std::string& g, std::size_t left, std::size_t right) {
            return verdict_dict(s, check_las(s, MistakeFunction::parse(g), {left, right}));
          },
          py::arg("g") = "const:1", py::arg("left") = 6, py::arg("right") = 6)
      .def(
          "check_ras",
          [](const Shift& s, const std::string& g, std::size_t left, std::size_t right) {
            return verdict_dict(s, check_ras(s, MistakeFunction::parse(g), {left, right}));
          },
          py::arg("g") = "const:1", py::arg("left") = 6, py::arg("right") = 6)
      .def(
          "check_specification",
          [](const Shift& s, std::size_t tau, std::size_t left, std::size_t right) {
            return verdict_dict(s, check_specification(s, tau, {left, right}));
          },
          py::arg("tau"), py::arg("left") = 6, py::arg("right") = 6);

  m.def("load", [](const std::string& path) { return make_shift(load_shift_spec(path)); }, py::arg("path"));
  m.def("parse", [](const std::string& text) { return make_shift(parse_shift_spec(text)); }, py::arg("text"));
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "symdyn");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");

  // Translators run newest first, so the base class goes in first.
  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
}
