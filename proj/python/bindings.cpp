#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "plsat/dist.hpp"
#include "plsat/genmodel.hpp"
#include "plsat/probe.hpp"
#include "plsat/solver.hpp"
#include "plsat/sweep.hpp"
#include "plsat/tspan.hpp"
#include "plsat/zeta.hpp"

namespace py = pybind11;
using namespace plsat;

PYBIND11_MODULE(_plsat, m) {
  m.doc() = "power-law random 2-SAT: configuration-model generator, exact solver, span search";

  py::class_<DistSpec>(m, "DistSpec")
      .def_static("parse", &DistSpec::parse, py::arg("text"))
      .def_static("zeta", &DistSpec::zeta, py::arg("beta"))
      .def_static("pareto_tail", &DistSpec::pareto_tail, py::arg("alpha"))
      .def_static("constant", &DistSpec::constant, py::arg("d"))
      .def("pmf", &DistSpec::pmf, py::arg("l"))
      .def("tail", &DistSpec::tail, py::arg("l"))
      .def("moment",
           [](const DistSpec& d, int m) -> py::object {
             const auto v = d.moment(m);
             return v ? py::cast(*v) : py::none();
           },
           py::arg("m"), "E[xi^m], or None when the moment diverges")
      .def("sample",
           [](const DistSpec& d, std::uint64_t seed, std::int64_t count) {
             RngStream rng(seed);
             std::vector<std::int64_t> out;
             out.reserve(static_cast<std::size_t>(count));
             for (std::int64_t i = 0; i < count; ++i) out.push_back(d.sample(rng));
             return out;
           },
           py::arg("seed"), py::arg("count") = 1)
      .def_property_readonly("alpha", &DistSpec::alpha)
      .def("__repr__", &DistSpec::to_string);

  py::class_<FormulaStats>(m, "FormulaStats")
      .def_readonly("sn", &FormulaStats::sn)
      .def_readonly("tn", &FormulaStats::tn)
      .def_readonly("delta", &FormulaStats::delta)
      .def_readonly("ratio", &FormulaStats::ratio)
      .def_readonly("mu", &FormulaStats::mu);

  py::class_<Formula>(m, "Formula")
      .def_property_readonly("n_vars", [](const Formula& f) { return f.n_vars; })
      .def_property_readonly("k", [](const Formula& f) { return f.k; })
      .def_property_readonly("clause_count", &Formula::clause_count)
      .def("clause",
           [](const Formula& f, std::int64_t c) {
             std::vector<std::int32_t> lits;
             for (int j = 0; j < f.k; ++j) lits.push_back(f.lit(c, j));
             return lits;
           },
           py::arg("index"))
      .def("stats", [](const Formula& f) { return stats(f); })
      .def("to_dimacs", [](const Formula& f) { return to_dimacs(f); });

  m.def("parse_dimacs", &parse_dimacs_string, py::arg("text"));
  m.def(
      "generate",
      [](const std::string& dist, std::int64_t n, int k, std::uint64_t seed) {
        RngStream rng(seed);
        return generate(DistSpec::parse(dist), n, k, rng);
      },
      py::arg("dist"), py::arg("n"), py::arg("k") = 2, py::arg("seed") = 0);

  m.def("decide", [](const Formula& f) {
    const ImplicationDigest d = decide(f);
    py::dict out;
    out["verdict"] = d.sat ? "SAT" : "UNSAT";
    out["longest_path"] = d.condensation_longest_path;
    if (d.sat) {
      std::vector<bool> model(d.assignment.begin(), d.assignment.end());
      out["assignment"] = model;
    } else {
      out["witness"] = d.witness_var;
    }
    return out;
  });

  m.def(
      "tspan_search",
      [](const Formula& f, double alpha, std::uint64_t seed, double overlap_frac,
         bool force) {
        const FormulaStats st = stats(f);
        const SpanParams params = SpanParams::compute(f.n_vars, alpha, st, force);
        SearchOptions opts;
        opts.overlap_frac = overlap_frac;
        RngStream rng(seed);
        const SearchResult res = search_contradictory_paths(f, params, rng, opts);
        py::dict out;
        out["outcome"] = res.found ? "found" : "exhausted";
        out["rounds_used"] = res.rounds_used;
        out["pairings"] = res.pairings;
        if (res.found) out["found_variable"] = res.found_var;
        return out;
      },
      py::arg("formula"), py::arg("alpha"), py::arg("seed") = 0,
      py::arg("overlap_frac") = 0.1, py::arg("force") = false);

  m.def("solve_beta0", &solve_beta0);
  m.def("riemann_zeta", &riemann_zeta, py::arg("s"));
  m.def(
      "threshold_side",
      [](const std::string& dist) {
        switch (DistSpec::parse(dist).threshold_side()) {
          case ThresholdSide::SatSide:
            return "sat";
          case ThresholdSide::UnsatSide:
            return "unsat";
          default:
            return "critical";
        }
      },
      py::arg("dist"));
}
