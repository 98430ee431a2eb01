#include <string>
#include <variant>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lindyn/diskdyn.hpp"
#include "lindyn/epsilon.hpp"
#include "lindyn/extract.hpp"
#include "lindyn/parse.hpp"
#include "lindyn/report.hpp"
#include "lindyn/strongdyn.hpp"

namespace py = pybind11;
using lindyn::Complex;
using lindyn::Json;

namespace {

// Vectors come either as the CLI string forms or as a dense list of complex.
using VectorArg = std::variant<std::string, std::vector<Complex>>;
// Automorphisms come as "theta=..,alpha=.." or as a (theta, alpha) pair.
using AutoArg = std::variant<std::string, std::pair<double, Complex>>;

lindyn::SeqVector to_vector(const VectorArg& arg, lindyn::SpaceTag space) {
  if (const auto* text = std::get_if<std::string>(&arg)) return lindyn::parse_vector(*text, space);
  return lindyn::SeqVector::dense(space, std::get<std::vector<Complex>>(arg));
}

lindyn::DiskAutomorphism to_auto(const AutoArg& arg) {
  if (const auto* text = std::get_if<std::string>(&arg)) return lindyn::parse_automorphism(*text);
  const auto& [theta, alpha] = std::get<std::pair<double, Complex>>(arg);
  return {theta, alpha};
}

lindyn::BackwardShift to_shift(const std::string& weights, const std::string& tail, const std::string& space) {
  return {lindyn::parse_weights(weights, tail), lindyn::SpaceTag::parse(space)};
}

// Reports cross into Python through their canonical JSON text.
py::object to_py(const Json& doc) {
  return py::module_::import("json").attr("loads")(lindyn::dump(doc));
}

py::object epsilon(const std::string& weights, const std::string& tail, const std::string& space, std::size_t n,
                   std::size_t r, std::uint64_t seed, double tol) {
  const auto b = to_shift(weights, tail, space);
  return to_py(lindyn::to_json(lindyn::epsilon_estimate(b, n, r, seed, tol)));
}

py::object classify(const std::string& weights, const std::string& tail, const std::string& space) {
  return to_py(lindyn::to_json(lindyn::classify(to_shift(weights, tail, space))));
}

bool in_image_of_unit_ball(const std::string& weights, const VectorArg& y, const std::string& tail,
                           const std::string& space) {
  const auto b = to_shift(weights, tail, space);
  return lindyn::in_image_of_unit_ball(b, to_vector(y, b.space));
}

py::object witness(const std::string& weights, const std::string& c, const VectorArg& target, double radius,
                   const VectorArg& center, const std::string& tail, const std::string& space, std::size_t ncap) {
  const auto b = to_shift(weights, tail, space);
  const auto w = lindyn::strong_hc_witness(b, lindyn::parse_complex(c), to_vector(center, b.space), radius,
                                           to_vector(target, b.space), ncap);
  return to_py(lindyn::to_json(w));
}

py::object run_extract(const lindyn::LinearOp& op, const lindyn::SeqVector& x, std::size_t k,
                       std::size_t search_cap, double eta, double margin) {
  const auto trace = lindyn::extract_subsequence(op, x, k, search_cap, eta, margin);
  Json doc = lindyn::to_json(trace);
  doc["verified"] = lindyn::verify_trace(op, trace);
  return to_py(doc);
}

py::object extract_shift(const std::string& weights, const VectorArg& x, std::size_t k, const std::string& tail,
                         const std::string& space, std::size_t search_cap, double eta, double margin) {
  const auto b = to_shift(weights, tail, space);
  const auto xv = to_vector(x, b.space);
  return run_extract(lindyn::LinearOp::shift(b), xv, k, search_cap, eta, margin);
}

py::object extract_matrix(const Eigen::MatrixXcd& matrix, const VectorArg& x, std::size_t k,
                          const std::string& space, std::size_t search_cap, double eta, double margin) {
  const auto tag = lindyn::SpaceTag::parse(space);
  const auto xv = to_vector(x, tag);
  return run_extract(lindyn::LinearOp::matrix(matrix, tag), xv, k, search_cap, eta, margin);
}

py::object fixed_points(const AutoArg& phi) { return to_py(lindyn::to_json(lindyn::fixed_points(to_auto(phi)))); }

Complex iterate(const AutoArg& phi, std::int64_t n, Complex z) { return lindyn::iterate_map(to_auto(phi), n)(z); }

py::object disk(const AutoArg& phi, const std::string& w, std::size_t n, std::size_t m) {
  const auto map = to_auto(phi);
  Json doc;
  doc["phi"] = lindyn::to_json(map);
  doc["fixedPoints"] = lindyn::to_json(lindyn::fixed_points(map));
  doc["inverse"] = lindyn::to_json(lindyn::invert_auto(map));
  doc["obstruction"] = lindyn::to_json(lindyn::obstruction_report(lindyn::parse_analytic(w), map, n, m));
  return to_py(doc);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the lindyn C++ core";
  m.attr("__version__") = lindyn::kVersion;

  py::register_exception<lindyn::Error>(m, "LindynError", PyExc_ValueError);

  m.def("epsilon", &epsilon, py::arg("weights"), py::kw_only(), py::arg("tail") = "", py::arg("space") = "l2",
        py::arg("N") = 100, py::arg("R") = 64, py::arg("seed") = 0, py::arg("tol") = lindyn::kDefaultTol,
        "Closed-form and estimated epsilon of the weighted backward shift");
  m.def("classify", &classify, py::arg("weights"), py::kw_only(), py::arg("tail") = "", py::arg("space") = "l2",
        "Strong hypercyclicity and supercyclicity classification");
  m.def("in_image_of_unit_ball", &in_image_of_unit_ball, py::arg("weights"), py::arg("y"), py::kw_only(),
        py::arg("tail") = "", py::arg("space") = "l2", "Whether y lies in B_W(open unit ball)");
  m.def("witness", &witness, py::arg("weights"), py::arg("c"), py::arg("target"), py::arg("radius"), py::kw_only(),
        py::arg("center") = VectorArg{std::string("0")}, py::arg("tail") = "", py::arg("space") = "l2",
        py::arg("ncap") = 10000, "Strong hypercyclicity witness for cB_W");
  m.def("extract_shift", &extract_shift, py::arg("weights"), py::arg("x"), py::kw_only(), py::arg("K") = 5,
        py::arg("tail") = "", py::arg("space") = "l2", py::arg("search_cap") = lindyn::kDefaultSearchCap,
        py::arg("eta") = 0.5, py::arg("margin") = lindyn::kDefaultMargin,
        "Greedy orbit exponent extraction for a weighted backward shift, with verification");
  m.def("extract_matrix", &extract_matrix, py::arg("matrix"), py::arg("x"), py::kw_only(), py::arg("K") = 5,
        py::arg("space") = "l2", py::arg("search_cap") = lindyn::kDefaultSearchCap, py::arg("eta") = 0.5,
        py::arg("margin") = lindyn::kDefaultMargin,
        "Greedy orbit exponent extraction for a square complex matrix, with verification");
  m.def("fixed_points", &fixed_points, py::arg("phi"), "Fixed points, type and Denjoy-Wolff point");
  m.def("iterate", &iterate, py::arg("phi"), py::arg("n"), py::arg("z"), "phi_n(z); negative n iterates the inverse");
  m.def("disk", &disk, py::arg("phi"), py::kw_only(), py::arg("w") = "const:1", py::arg("N") = 50,
        py::arg("M") = 20, "Fixed points, inverse and obstruction report for the weighted composition C_{w,phi}");
  m.def("format_complex", &lindyn::format_complex, py::arg("z"), "\"re+imi\" with 17 significant digits");
}
