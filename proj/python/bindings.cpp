#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/io.hpp"
#include "cpdigraph/sampler.hpp"

namespace py = pybind11;
using namespace cpdigraph;

namespace {

MultiDigraph sample(const std::string& model_text, std::size_t n, std::uint64_t seed,
                    const std::string& normalizer_mode, const std::string& sampler) {
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  const WeightModel model = parse_model(model_text);
  const WeightSequence w = sample_weights(model, n, seed);
  const double L = normalizer(w, moments(model).mu, parse_normalizer_mode(normalizer_mode));
  if (sampler == "fast") return sample_graph_fast(w, L, seed);
  if (sampler == "naive") return sample_graph_naive(w, L, seed);
  throw std::invalid_argument("sampler must be 'fast' or 'naive'");
}

std::vector<std::tuple<double, double>> weights(const std::string& model_text, std::size_t n,
                                                std::uint64_t seed) {
  const auto w = sample_weights(parse_model(model_text), n, seed);
  std::vector<std::tuple<double, double>> out;
  out.reserve(w.size());
  for (const auto& p : w.pairs()) out.emplace_back(p.w_in, p.w_out);
  return out;
}

MultiDigraph from_arcs(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, std::uint64_t>>& arcs) {
  std::vector<Arc> list;
  list.reserve(arcs.size());
  for (const auto& [s, d, m] : arcs) list.push_back({s, d, m});
  return MultiDigraph::from_arcs(n, std::move(list));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conditionally Poissonian random multidigraphs";
  m.attr("__version__") = std::string(kVersion);

  py::class_<MultiDigraph>(m, "MultiDigraph")
      .def(py::init(&from_arcs), py::arg("n"), py::arg("arcs"),
           "Build from (src, dst, multiplicity) triples with 0-based ids.")
      .def_property_readonly("n", &MultiDigraph::n)
      .def_property_readonly("total_arcs", &MultiDigraph::total_arcs)
      .def_property_readonly("total_loops", &MultiDigraph::total_loops)
      .def("multiplicity", &MultiDigraph::multiplicity, py::arg("src"), py::arg("dst"))
      .def("arcs",
           [](const MultiDigraph& g) {
             std::vector<std::tuple<Vertex, Vertex, std::uint64_t>> out;
             out.reserve(g.distinct_pairs());
             for (const Arc& a : g.arcs()) out.emplace_back(a.src, a.dst, a.mult);
             return out;
           })
      .def("__eq__", [](const MultiDigraph& a, const MultiDigraph& b) { return a == b; });

  m.def("sample", &sample, py::arg("model"), py::arg("n"), py::arg("seed") = 1,
        py::arg("normalizer") = "mu-n", py::arg("sampler") = "fast");
  m.def("weights", &weights, py::arg("model"), py::arg("n"), py::arg("seed") = 1);
  m.def(
      "_components_json",
      [](const MultiDigraph& g, std::size_t top_k) {
        return component_report(summarize_components(g), top_k).dump();
      },
      py::arg("graph"), py::arg("top_k") = 10);
  m.def(
      "_survival_json",
      [](const std::string& model, const std::string& configuration) {
        return to_json(survival_fractions(parse_model(model),
                                          parse_survival_configuration(configuration)))
            .dump();
      },
      py::arg("model"), py::arg("configuration"));
  m.def(
      "_edge_list",
      [](const MultiDigraph& g, std::uint64_t seed) {
        std::ostringstream out;
        Provenance p;
        p.seed = seed;
        p.generator = "python";
        write_edge_list(out, g, p);
        return out.str();
      },
      py::arg("graph"), py::arg("seed") = 0);
  m.def("poisson_tv", &poisson_tv, py::arg("u"), py::arg("lam"));
  m.def("critical_cluster_exponent", &critical_cluster_exponent, py::arg("tau"));
}
