#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curvekit/collar.hpp"
#include "curvekit/curves.hpp"
#include "curvekit/farey.hpp"
#include "curvekit/graph.hpp"
#include "curvekit/mm.hpp"
#include "curvekit/search.hpp"

namespace py = pybind11;
using namespace curvekit;

namespace {

using Sig = std::pair<int, int>;

SurfaceSig sig_of(const Sig& s) { return SurfaceSig(s.first, s.second); }

py::object json_loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

CurveDiagram curve_on(const ModelPtr& m, const std::string& word) { return make_curve(m, word); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curve graph toolkit: Farey embeddings, curve diagrams and bounded searches.";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def("add_vertex", &Graph::add_vertex)
      .def("add_edge", py::overload_cast<const std::string&, const std::string&>(&Graph::add_edge))
      .def("__len__", &Graph::size)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("labels", &Graph::labels)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<std::string, std::string>> out;
             for (auto [u, v] : g.edges()) out.emplace_back(g.label(u), g.label(v));
             return out;
           })
      .def("to_adjacency_list", [](const Graph& g) { return to_adjacency_list(g); })
      .def("to_json", [](const Graph& g) { return to_edge_list_json(g); })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); }, py::arg("text"));

  m.def(
      "is_farey_embeddable",
      [](const Graph& g) -> py::tuple {
        const auto r = is_farey_embeddable(g);
        py::object w = r.witness ? json_loads(witness_to_json(*r.witness)) : py::none();
        return py::make_tuple(r.embeddable, w);
      },
      py::arg("graph"), "Returns (accepted, witness or None).");

  m.def(
      "farey_embed",
      [](const Graph& g, const Sig& s) { return json_loads(certificate_to_json(farey_embed(g, sig_of(s)))); },
      py::arg("graph"), py::arg("surface") = Sig{1, 1});

  m.def(
      "bounded_search",
      [](const Graph& g, long long bound, const Sig& s) -> py::object {
        const auto r = bounded_search(g, bound, sig_of(s));
        return r ? json_loads(certificate_to_json(*r)) : py::none();
      },
      py::arg("graph"), py::arg("bound"), py::arg("surface") = Sig{1, 1});

  m.def(
      "verify_certificate",
      [](const Graph& g, const std::string& cert_json) { return verify_certificate(g, certificate_from_json(cert_json)); },
      py::arg("graph"), py::arg("certificate_json"));

  m.def(
      "decide",
      [](const Graph& g, const Sig& s, const std::string& schedule) {
        const auto steps = schedule.empty() ? default_schedule() : parse_schedule(schedule);
        DecisionOutcome out;
        {
          py::gil_scoped_release release;
          out = decide(g, sig_of(s), steps);
        }
        return json_loads(outcome_to_json(out));
      },
      py::arg("graph"), py::arg("surface"), py::arg("schedule") = "");

  m.def(
      "mm_estimate",
      [](const std::string& alpha, const std::string& beta, long long k) {
        const auto r = mm_estimate(Slope::parse(alpha), Slope::parse(beta), k);
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["farey_term"] = r.farey_term;
        d["annular_terms"] = r.annular_terms;
        d["distance"] = r.distance;
        d["intersection"] = r.intersection.str();
        d["k"] = r.k;
        return d;
      },
      py::arg("alpha"), py::arg("beta"), py::arg("k") = 3);

  m.def("farey_distance", [](const std::string& a, const std::string& b) { return farey_distance(Slope::parse(a), Slope::parse(b)); });
  m.def("continued_fraction", [](const std::string& s) {
    std::vector<std::string> out;
    for (const auto& a : continued_fraction(Slope::parse(s))) out.push_back(a.str());
    return out;
  });

  m.def(
      "calibrate",
      [](std::size_t samples, long long max_q, long long k, std::uint64_t seed) {
        const auto r = calibrate_c(sample_slope_pairs(samples, max_q, seed), k);
        py::dict d;
        d["C_emp"] = r.c_emp;
        d["samples"] = r.sample_count;
        d["witness"] = py::make_tuple(r.witness.first.str(), r.witness.second.str());
        return d;
      },
      py::arg("samples") = 10000, py::arg("max_q") = 1000000, py::arg("k") = 3, py::arg("seed") = 7);

  m.def("collar_radius", &collar_radius, py::arg("length"));
  m.def(
      "collar_test",
      [](std::size_t samples, std::uint64_t seed) {
        const auto r = run_collar_test(samples, seed);
        py::dict d;
        d["r"] = r.r;
        d["tangency_max_residual"] = r.tangency_max_residual;
        d["lemma2_max_gap"] = r.lemma2_max_gap;
        d["lemma2_min_gap"] = r.lemma2_min_gap;
        d["samples"] = r.samples;
        return d;
      },
      py::arg("samples") = 10000, py::arg("seed") = 5);

  m.def(
      "geometric_intersection",
      [](const Sig& s, const std::string& a, const std::string& b) {
        const auto model = make_model(sig_of(s));
        return geometric_intersection(curve_on(model, a), curve_on(model, b));
      },
      py::arg("surface"), py::arg("a"), py::arg("b"), "Curves are words such as \"a1 b1^-1\".");
  m.def(
      "self_intersection", [](const Sig& s, const std::string& w) { return self_intersection(curve_on(make_model(sig_of(s)), w)); },
      py::arg("surface"), py::arg("word"));
  m.def(
      "dehn_twist",
      [](const Sig& s, const std::string& w, const std::string& along, long long power) {
        const auto model = make_model(sig_of(s));
        return dehn_twist(curve_on(model, w), curve_on(model, along), power).str();
      },
      py::arg("surface"), py::arg("word"), py::arg("along"), py::arg("power") = 1);
  m.def(
      "torus_curve",
      [](long long p, long long q, const Sig& s) { return make_torus_curve(make_model(sig_of(s)), p, q).str(); },
      py::arg("p"), py::arg("q"), py::arg("surface") = Sig{1, 0});

  m.def(
      "atlas",
      [](const Sig& s, int L, long long B) {
        Atlas a;
        {
          py::gil_scoped_release release;
          a = generate_atlas(sig_of(s), L, B);
        }
        return json_loads(atlas_to_json(a, sig_of(s)));
      },
      py::arg("surface"), py::arg("L"), py::arg("B"));

  m.def(
      "reembed",
      [](const std::vector<double>& slopes, std::optional<std::vector<std::vector<std::size_t>>> cliques) {
        py::dict doc;
        doc["slopes"] = slopes;
        if (cliques) doc["cliques"] = *cliques;
        const std::string text = py::module_::import("json").attr("dumps")(doc).cast<std::string>();
        py::list trace;
        for (const auto& step : annulus_reembed_trace(annulus_from_json(text))) trace.append(json_loads(annulus_to_json(step)));
        return trace;
      },
      py::arg("slopes"), py::arg("cliques") = py::none(), "Every state visited until the move stops changing the slopes.");

  m.def(
      "cluster",
      [](const std::vector<double>& points, double scale, double offset) {
        return json_loads(cluster_to_json(cluster_partition(points, [=](double D) { return scale * D + offset; })));
      },
      py::arg("points"), py::arg("scale") = 1.0, py::arg("offset") = 2.0, "Gap function g(D) = scale * D + offset.");
}
