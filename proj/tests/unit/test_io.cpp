#include <doctest.h>

#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cpdigraph/io.hpp"
#include "cpdigraph/sampler.hpp"

using namespace cpdigraph;

namespace {

EdgeList parse(const std::string& text, std::optional<std::size_t> n = std::nullopt) {
  std::istringstream in(text);
  return read_edge_list(in, n);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const EdgeListError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("model json round trips") {
  const std::vector<WeightModel> models = {
      WeightModel::constant(2.0),
      WeightModel::pareto_mirrored(3.5, 1.0),
      WeightModel::mirrored(ParetoLaw{2.5, 0.5}),
      WeightModel::oriented_nr(ConstantLaw{1.5}),
      WeightModel::independent(ParetoLaw{3.0, 1.0}, ParetoLaw{4.0, 4.0 / 3.0}),
  };
  for (const auto& m : models) {
    const json j = to_json(m);
    const auto back = model_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.kind() == m.kind());
    CHECK(to_json(parse_model(j.dump())) == j);
  }
}

TEST_CASE("compact model strings") {
  CHECK(to_json(parse_model("constant:2")) == json{{"kind", "constant"}, {"c", 2.0}});
  CHECK(to_json(parse_model("pareto-mirrored:3.5,1")) ==
        json{{"kind", "pareto-mirrored"}, {"tau", 3.5}, {"xmin", 1.0}});
  CHECK(parse_model("mirrored:pareto:3,1").kind() == ModelKind::MirroredCapacity);
  CHECK(parse_model("oriented-nr:constant:2").kind() == ModelKind::OrientedNR);
  const auto ind = parse_model("independent:pareto:3,1/constant:2");
  CHECK(ind.kind() == ModelKind::IndependentProduct);
  CHECK(std::holds_alternative<ConstantLaw>(ind.out_law()));
  for (const char* bad : {"constant", "constant:x", "pareto-mirrored:3.5", "foo:1", "independent:constant:1",
                          "constant:-1", "pareto-mirrored:1.5,1", "independent:constant:1/constant:2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_model(bad), std::invalid_argument);
  }
}

TEST_CASE("model json rejects unknown and missing fields") {
  CHECK_THROWS_AS(model_from_json(json{{"kind", "constant"}, {"c", 1.0}, {"x", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(model_from_json(json{{"kind", "constant"}}), std::invalid_argument);
  CHECK_THROWS_AS(model_from_json(json{{"kind", "constant"}, {"c", "two"}}), std::invalid_argument);
  CHECK_THROWS_AS(model_from_json(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(marginal_from_json(json{{"kind", "lognormal"}}), std::invalid_argument);
}

TEST_CASE("edge list round trip") {
  const auto w = sample_weights(WeightModel::pareto_mirrored(2.5, 1.0), 200, 3);
  const auto g = sample_graph_fast(w, w.sum_in(), 4);
  Provenance p;
  p.seed = 4;
  p.model = to_json(WeightModel::pareto_mirrored(2.5, 1.0));
  p.normalizer_mode = "capacity-sum";
  p.normalizer = w.sum_in();
  p.generator = "fast";
  std::ostringstream out;
  write_edge_list(out, g, p);
  const std::string text = out.str();
  CHECK(text.rfind("# n=200 seed=4\n", 0) == 0);
  const auto back = parse(text);
  CHECK(back.graph == g);
  CHECK(back.header.at("n") == "200");
  CHECK(back.header.at("seed") == "4");
  CHECK(json::parse(back.header.at("model")) == *p.model);
  // Rows are 1-based and sorted.
  const auto first_row = text.find("\n", text.rfind("# ")) + 1;
  const Arc a = g.arcs().front();
  CHECK(text.substr(first_row, text.find('\n', first_row) - first_row) ==
        std::to_string(a.src + 1) + "\t" + std::to_string(a.dst + 1) + "\t" + std::to_string(a.mult));
}

TEST_CASE("edge list parsing errors") {
  CHECK(error_of("1\t2\t1\n") == "no n declared");
  CHECK(error_of("# n=3\n1\t2\n") == "line 2: expected 'src<TAB>dst<TAB>multiplicity'");
  CHECK(error_of("# n=3\n0\t2\t1\n") == "line 2: vertex ids are 1-based");
  CHECK(error_of("# n=3\n1\t2\t0\n") == "line 2: multiplicity must be >= 1");
  CHECK(error_of("# n=3\n1\t4\t1\n") == "line 2: vertex id exceeds n=3");
  CHECK(error_of("# n=3\n1\tb\t1\n") == "line 2: non-integer field");
  CHECK(error_of("# n=x\n") == "header n is not an integer");
}

TEST_CASE("n override and header-only input") {
  const auto e = parse("# n=5 seed=1\n");
  CHECK(e.graph.n() == 5);
  CHECK(e.graph.total_arcs() == 0);
  const auto o = parse("1\t2\t3\n2\t1\t1\n", 4);
  CHECK(o.graph.n() == 4);
  CHECK(o.graph.multiplicity(0, 1) == 3);
  CHECK_THROWS_AS(parse("# n=5\n5\t6\t1\n", 5), EdgeListError);
}

TEST_CASE("weights tsv") {
  std::ostringstream out;
  write_weights_tsv(out, WeightSequence({{1.5, 2.0}, {3.0, 0.25}}));
  CHECK(out.str() == "# index\tw_in\tw_out\n1\t1.5\t2.0\n2\t3.0\t0.25\n");
}

TEST_CASE("report json") {
  const auto g = MultiDigraph::from_arcs(4, {{0, 1, 1}, {1, 0, 1}, {1, 2, 1}});
  const json r = component_report(summarize_components(g), 2);
  CHECK(r["n"] == 4);
  CHECK(r["largest_weak"] == 3);
  CHECK(r["largest_strong"] == 2);
  CHECK(r["weak_count"] == 2);
  CHECK(r["strong_count"] == 3);
  CHECK(r["strong_sizes_topk"] == json::array({2, 1}));
  SurvivalReport s;
  s.critical_ratio_in = std::numeric_limits<double>::infinity();
  CHECK(to_json(s)["critical_ratio_in"] == "inf");
}
