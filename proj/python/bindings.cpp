#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "etaforge/cli.hpp"
#include "etaforge/enumerate.hpp"
#include "etaforge/orders.hpp"
#include "etaforge/phimap.hpp"
#include "etaforge/series.hpp"
#include "etaforge/zagier.hpp"

namespace py = pybind11;
using namespace etaforge;

namespace {

using Exponents = std::map<std::int64_t, std::int64_t>;

ExponentVector to_vector(const Exponents& x) { return ExponentVector(x); }

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}

py::int_ to_int(const BigInt& v) { return py::int_(py::str(v.get_str())); }

py::dict classified(const ClassifiedQuotient& q) {
  py::dict d;
  d["exponents"] = q.exponents.entries();
  d["level"] = q.level;
  d["primitive"] = q.primitive;
  d["zagier"] = q.zagier ? py::object(py::make_tuple(q.zagier->index, q.zagier->nu)) : py::object(py::none());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Eta quotients on Gamma_0(N): orders, holomorphy, enumeration and q-expansions.";

  // Later registrations are tried first, so subclasses follow the base.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("parse", [](const std::string& text) { return parse(text).entries(); }, py::arg("text"),
        "\"1^2 2^-1\" -> {1: 2, 2: -1}");
  m.def("format", [](const Exponents& x) { return format(to_vector(x)); }, py::arg("x"));
  m.def("level", [](const Exponents& x) { return level(to_vector(x)); }, py::arg("x"));
  m.def("weight2", [](const Exponents& x) { return weight2(to_vector(x)); }, py::arg("x"),
        "Twice the weight, i.e. the sum of the exponents.");

  m.def(
      "order_map",
      [](const Exponents& x, std::int64_t n) {
        py::dict out;
        for (const auto& [t, v] : order_map(to_vector(x), n)) out[py::int_(t)] = to_fraction(v);
        return out;
      },
      py::arg("x"), py::arg("level"), "t -> order at the cusp 1/t, as Fractions.");
  m.def("is_holomorphic", [](const Exponents& x, std::int64_t n) { return is_holomorphic(to_vector(x), n); },
        py::arg("x"), py::arg("level"));

  m.def(
      "enumerate_holomorphic",
      [](std::int64_t n, std::int64_t k2, unsigned threads) {
        SearchOptions options;
        options.threads = threads;
        std::vector<ExponentVector> found;
        {
          py::gil_scoped_release release;
          found = enumerate_holomorphic(n, k2, options);
        }
        std::vector<Exponents> out;
        for (const auto& x : found) out.push_back(x.entries());
        return out;
      },
      py::arg("level"), py::arg("weight2") = 1, py::arg("threads") = 0);

  m.def(
      "verify_zagier",
      [](std::int64_t n) {
        ZagierReport r;
        {
          py::gil_scoped_release release;
          r = verify_zagier(n);
        }
        py::list quotients;
        for (const auto& q : r.quotients) quotients.append(classified(q));
        py::dict d;
        d["level"] = r.level;
        d["total"] = r.total;
        d["primitive"] = r.primitive;
        d["violations"] = r.violations;
        d["quotients"] = quotients;
        return d;
      },
      py::arg("level"));

  m.def("zagier_list", [] {
    std::vector<Exponents> out;
    for (const auto& x : zagier_list()) out.push_back(x.entries());
    return out;
  });

  m.def(
      "quotient_series",
      [](const Exponents& x, std::int64_t precision) {
        const auto s = quotient_series(to_vector(x), precision);
        py::list coeffs;
        for (const auto& c : s.coefficients()) coeffs.append(to_int(c.to_integer()));
        return py::make_tuple(s.leading_exponent(), coeffs);
      },
      py::arg("x"), py::arg("precision"),
      "(e0, [c_0, c_1, ...]) with the expansion sum c_m q^((e0 + m)/24).");

  m.def(
      "apply_phi",
      [](const Exponents& x, std::int64_t m, std::int64_t n, std::optional<Exponents> weights) {
        const PhiWeights w = weights ? validate_weights(m, n, *weights) : ones_weights(m, n);
        return apply_phi(to_vector(x), w).entries();
      },
      py::arg("x"), py::arg("source_level"), py::arg("target_level"), py::arg("weights") = py::none());

  m.def("involution_pairing", [](std::int64_t precision) {
    std::vector<std::tuple<int, int, int>> out;
    for (const auto& e : involution_pairing(precision)) out.emplace_back(e.from, e.to, e.unit);
    return out;
  }, py::arg("precision") = 600, "[(from, to, k)] with sign_transform(f_from) = zeta_48^k f_to.");

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int status = cli::run(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Runs one command-line invocation; returns (status, stdout, stderr).");
}
