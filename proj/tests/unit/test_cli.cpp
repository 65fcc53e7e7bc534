#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "cpdigraph/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cpdigraph::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cpdigraph_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("sample is reproducible and starts with the size line") {
  const auto a = run({"sample", "--model", "constant:1", "--n", "100", "--seed", "7"});
  const auto b = run({"sample", "--model", "constant:1", "--n", "100", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# n=100 seed=7\n", 0) == 0);
  CHECK(run({"sample", "--model", "constant:1", "--n", "100", "--seed", "8"}).out != a.out);
  const auto naive = run({"sample", "--model", "constant:1", "--n", "100", "--seed", "7", "--sampler", "naive"});
  CHECK(naive.code == 0);
  for (const char* c : {"oriented-sum", "random-orientation", "independent-sum"}) {
    CHECK(run({"sample", "--model", "constant:1", "--n", "50", "--construction", c}).code == 0);
  }
}

TEST_CASE("sample argument errors exit 2") {
  CHECK(run({"sample", "--model", "constant:1", "--n", "0"}).code == 2);
  CHECK(run({"sample", "--n", "10"}).code == 2);
  CHECK(run({"sample", "--model", "constant:0", "--n", "10"}).code == 2);
  CHECK(run({"sample", "--model", "constant:1", "--n", "10", "--bogus"}).code == 2);
  CHECK(run({"sample", "--model", "constant:1", "--n", "10", "--sampler", "slow"}).code == 2);
  CHECK(run({"sample", "--model", "constant:1", "--n", "10", "--normalizer", "x"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("pareto arc count matches its conditional mean") {
  const auto wpath = scratch("w.tsv").string();
  const auto r = run({"sample", "--model", "pareto-mirrored:3.5,1", "--n", "10000", "--seed", "3",
                      "--weights-out", wpath});
  REQUIRE(r.code == 0);
  std::istringstream text(r.out);
  const auto el = cpdigraph::read_edge_list(text);
  std::ifstream win(wpath);
  std::string line;
  double s_in = 0.0, s_out = 0.0;
  std::size_t rows = 0;
  while (std::getline(win, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double idx, wi, wo;
    ls >> idx >> wi >> wo;
    s_in += wi;
    s_out += wo;
    ++rows;
  }
  CHECK(rows == 10000);
  const double L = 10000 * 2.5 / 1.5;
  const double mean = s_in * s_out / L;
  CHECK(std::abs(static_cast<double>(el.graph.total_arcs()) - mean) < 5.0 * std::sqrt(mean));
  CHECK(el.header.at("arcs") == std::to_string(el.graph.total_arcs()));
}

TEST_CASE("components on a cycle and an empty graph") {
  const auto cyc = write_file("cycle.tsv", "# n=3\n1\t2\t1\n2\t3\t1\n3\t1\t1\n");
  const auto r = run({"components", cyc});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["largest_strong"] == 3);
  CHECK(j["largest_weak"] == 3);
  const auto empty = write_file("empty.tsv", "# n=5 seed=1\n");
  const json e = json::parse(run({"components", "--in", empty}).out);
  CHECK(e["largest_strong"] == 1);
  CHECK(e["strong_count"] == 5);
}

TEST_CASE("edge list problems exit 3") {
  const auto nohdr = write_file("nohdr.tsv", "1\t2\t1\n");
  const auto r = run({"components", nohdr});
  CHECK(r.code == 3);
  CHECK(r.err.find("no n declared") != std::string::npos);
  const json j = json::parse(run({"components", nohdr, "--n", "4"}).out);
  CHECK(j["n"] == 4);
  CHECK(j["largest_weak"] == 2);
  const auto bad = write_file("bad.tsv", "# n=3\n1\t2\n");
  const auto b = run({"components", bad});
  CHECK(b.code == 3);
  CHECK(b.err.find("line 2") != std::string::npos);
  CHECK(run({"components", scratch("missing.tsv").string()}).code == 3);
}

TEST_CASE("output path errors exit 3") {
  CHECK(run({"sample", "--model", "constant:1", "--n", "5", "--out", "/nonexistent/dir/g.tsv"}).code == 3);
  const auto good = scratch("g5.tsv");
  CHECK(run({"sample", "--model", "constant:1", "--n", "5", "--out", good.string()}).code == 0);
  CHECK(read_file(good).rfind("# n=5 seed=1", 0) == 0);
}

TEST_CASE("survival values") {
  const auto r = run({"survival", "--config", "mirrored-sum", "--model", "constant:2"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["q_f"].get<double>() == doctest::Approx(0.20319).epsilon(1e-4));
  CHECK(j["zeta"].get<double>() == doctest::Approx(0.79681).epsilon(1e-4));
  CHECK(j["pi"].get<double>() == doctest::Approx(0.63491).epsilon(1e-4));
  CHECK(run({"survival", "--config", "independent-sum", "--model", "pareto-mirrored:3.5,1"}).code == 2);
  CHECK(run({"survival", "--config", "other", "--model", "constant:2"}).code == 2);
}

TEST_CASE("stats fits against the header model") {
  const auto path = scratch("c2.tsv").string();
  REQUIRE(run({"sample", "--model", "constant:2", "--n", "20000", "--out", path}).code == 0);
  const auto r = run({"stats", path});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["n"] == 20000);
  CHECK(j["model"] == json{{"kind", "constant"}, {"c", 2.0}});
  CHECK(j["degree_fit"]["underpowered"] == true);
  CHECK(j["mean_in_degree"].get<double>() == doctest::Approx(2.0).epsilon(0.02));
  CHECK(j["moments"]["rho"] == 4.0);
}

TEST_CASE("scaling writes tsv blocks") {
  const auto r = run({"scaling", "--tau", "4", "--critical", "--n-list", "128,256", "--reps", "4",
                      "--bootstrap", "10", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# component=weak\n# N\tmedian_size\tmean_size\n128\t") != std::string::npos);
  CHECK(r.out.find("# component=forward") != std::string::npos);
  CHECK(r.out.find("# fit component=strong") != std::string::npos);
  CHECK(run({"scaling", "--tau", "4", "--n-list", "128,256", "--reps", "4"}).code == 2);
  CHECK(run({"scaling", "--tau", "4", "--critical", "--n-list", "128", "--reps", "4"}).code == 2);
}

TEST_CASE("evolve grows by one vertex and keeps the weights of an input file") {
  const auto start = scratch("e100.tsv").string();
  REQUIRE(run({"sample", "--model", "constant:1", "--n", "100", "--seed", "3", "--out", start}).code == 0);
  const auto r = run({"evolve", "--in", start, "--to", "101", "--seed", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# n=101 seed=3\n", 0) == 0);
  const auto fresh = run({"evolve", "--model", "constant:1", "--from", "5", "--to", "8"});
  CHECK(fresh.out.rfind("# n=8 seed=1\n", 0) == 0);
  CHECK(run({"evolve", "--model", "constant:1", "--from", "5", "--to", "4"}).code == 2);
  CHECK(run({"evolve", "--model", "constant:1", "--from", "5", "--to", "8", "--normalizer",
             "empirical-product"}).code == 2);
  CHECK(run({"evolve", "--in", start, "--from", "50", "--to", "101"}).code == 2);
}

TEST_CASE("verify on a graph: match passes, mismatch exits 1") {
  const auto path = scratch("c2big.tsv").string();
  REQUIRE(run({"sample", "--model", "constant:2", "--n", "100000", "--seed", "2", "--out", path}).code == 0);
  const auto ok = run({"verify", "--graph", path, "--model", "constant:2"});
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["pass"] == true);
  const auto bad = run({"verify", "--graph", path, "--model", "constant:1"});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["pass"] == false);
  CHECK(run({"verify", "--suite", "medium"}).code == 2);
}

TEST_CASE("config files: precedence, unknown fields and round trip") {
  const auto cfg = write_file("cfg.json", R"({"model": "constant:2", "n": 10, "seed": 5})");
  const auto merged = run({"sample", "--config-file", cfg, "--n", "4", "--dump-config"});
  REQUIRE(merged.code == 0);
  const json j = json::parse(merged.out);
  CHECK(j["n"] == 4);
  CHECK(j["seed"] == 5);
  CHECK(j["model"] == json{{"kind", "constant"}, {"c", 2.0}});
  const auto dumped = write_file("dumped.json", merged.out);
  const auto again = run({"sample", "--config-file", dumped, "--dump-config"});
  CHECK(json::parse(again.out) == j);
  CHECK(run({"sample", "--config-file", dumped}).out ==
        run({"sample", "--model", "constant:2", "--n", "4", "--seed", "5"}).out);
  const auto bad = write_file("badcfg.json", R"({"model": "constant:2", "bogus": 1})");
  CHECK(run({"sample", "--config-file", bad}).code == 2);
  const auto broken = write_file("broken.json", "{not json");
  CHECK(run({"sample", "--config-file", broken}).code == 2);
  CHECK(run({"sample", "--config-file", scratch("nope.json").string()}).code == 3);
}

TEST_CASE("version and help") {
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
}
