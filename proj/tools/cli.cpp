#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/checks.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/io.hpp"
#include "cpdigraph/sampler.hpp"
#include "cpdigraph/stats.hpp"

namespace cpdigraph::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Links a command-line option to a key of the JSON config file. Values
/// given on the command line win over the file.
class Bindings {
 public:
  template <typename T>
  CLI::Option* add(CLI::App& app, const std::string& flag, T& var, const std::string& desc) {
    auto* opt = app.add_option(flag, var, desc);
    entries_.push_back({key_of(flag), opt, [&var, flag](const json& j) { var = convert<T>(j, flag); },
                        [&var] { return json(var); }});
    return opt;
  }

  CLI::Option* add_flag(CLI::App& app, const std::string& flag, bool& var, const std::string& desc) {
    auto* opt = app.add_flag(flag, var, desc);
    entries_.push_back({key_of(flag), opt, [&var, flag](const json& j) { var = convert<bool>(j, flag); },
                        [&var] { return json(var); }});
    return opt;
  }

  /// The model accepts either the compact string or a JSON object.
  CLI::Option* add_model(CLI::App& app, std::string& var) {
    auto* opt = app.add_option("--model", var,
                               "Weight model, e.g. constant:2, pareto-mirrored:3.5,1, "
                               "mirrored:pareto:3.5,1, independent:constant:2/pareto:3.5,1.5, "
                               "or a JSON object");
    entries_.push_back({"model", opt,
                        [&var](const json& j) {
                          if (j.is_object()) {
                            var = j.dump();
                          } else if (j.is_string()) {
                            var = j.get<std::string>();
                          } else {
                            throw UsageError("config field 'model' must be a string or an object");
                          }
                        },
                        [&var] { return var.empty() ? json(nullptr) : to_json(parse_model(var)); }});
    return opt;
  }

  void apply(const json& config) {
    if (!config.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& item : config.items()) {
      auto it = std::find_if(entries_.begin(), entries_.end(),
                             [&](const Entry& e) { return e.key == item.key(); });
      if (it == entries_.end()) throw UsageError("unknown config field '" + item.key() + "'");
      if (it->option->count() == 0) it->from_json(item.value());
    }
  }

  json effective() const {
    json j = json::object();
    for (const auto& e : entries_) {
      json v = e.to_json();
      if (!v.is_null()) j[e.key] = std::move(v);
    }
    return j;
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* option;
    std::function<void(const json&)> from_json;
    std::function<json()> to_json;
  };

  static std::string key_of(const std::string& flag) {
    std::string key = flag.substr(flag.rfind(',') + 1);
    key = key.substr(key.find_first_not_of('-'));
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
  }

  template <typename T>
  static T convert(const json& j, const std::string& flag) {
    const auto fail = [&] { return UsageError("config field for " + flag + " has the wrong type"); };
    if constexpr (std::is_same_v<T, bool>) {
      if (!j.is_boolean()) throw fail();
    } else if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) {
      if (!j.is_number_unsigned()) throw fail();
    } else if constexpr (std::is_arithmetic_v<T>) {
      if (!j.is_number()) throw fail();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) throw fail();
    }
    return j.get<T>();
  }

  std::vector<Entry> entries_;
};

/// Options shared by every subcommand.
struct Common {
  std::string config_file;
  bool dump_config = false;
  std::string out_path;
  Bindings bindings;
};

void add_common(CLI::App& app, Common& c, bool with_out = true) {
  app.add_option("--config-file", c.config_file, "JSON file with option values (flags take precedence)");
  app.add_flag("--dump-config", c.dump_config, "Print the effective configuration as JSON and exit");
  if (with_out) c.bindings.add(app, "--out", c.out_path, "Output file (default: standard output)");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

/// Applies the config file; returns true if the caller should stop after
/// --dump-config printed the configuration.
bool finish_config(Common& c, std::ostream& out) {
  if (!c.config_file.empty()) c.bindings.apply(read_json_file(c.config_file));
  if (c.dump_config) {
    out << c.bindings.effective().dump(2) << '\n';
    return true;
  }
  return false;
}

/// Writes to --out when set, else to the default stream.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open output file '" + path + "'");
  body(file);
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

EdgeList load_edge_list(const std::string& path, std::size_t n_override) {
  const std::optional<std::size_t> n =
      n_override > 0 ? std::optional<std::size_t>(n_override) : std::nullopt;
  if (path.empty() || path == "-") return read_edge_list(std::cin, n);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list '" + path + "'");
  return read_edge_list(in, n);
}

WeightModel require_model(const std::string& text) {
  if (text.empty()) throw UsageError("--model is required");
  return parse_model(text);
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

struct SampleArgs {
  Common common;
  std::string model;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string normalizer = "mu-n";
  std::string sampler = "fast";
  std::string construction = "direct";
  std::string weights_out;
};

void setup_sample(CLI::App& app, SampleArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add_model(app, a.model);
  b.add(app, "--n", a.n, "Number of vertices (>= 1)");
  b.add(app, "--seed", a.seed, "Random seed");
  b.add(app, "--normalizer", a.normalizer, "mu-n | empirical-product | capacity-sum");
  b.add(app, "--sampler", a.sampler, "fast | naive (direct construction only)");
  b.add(app, "--construction", a.construction,
        "direct | oriented-sum | random-orientation | independent-sum");
  b.add(app, "--weights-out", a.weights_out, "Also write the weight sequence as TSV");
}

int cmd_sample(SampleArgs& a, std::ostream& out) {
  if (finish_config(a.common, out)) return kOk;
  const WeightModel model = require_model(a.model);
  if (a.n == 0) throw UsageError("--n must be >= 1");

  Provenance prov;
  prov.seed = a.seed;
  prov.model = to_json(model);
  MultiDigraph g;
  WeightSequence w;
  if (a.construction == "direct") {
    w = sample_weights(model, a.n, a.seed);
    const NormalizerMode mode = parse_normalizer_mode(a.normalizer);
    const double L = normalizer(w, moments(model).mu, mode);
    if (a.sampler == "fast") {
      g = sample_graph_fast(w, L, a.seed);
    } else if (a.sampler == "naive") {
      g = sample_graph_naive(w, L, a.seed);
    } else {
      throw UsageError("--sampler must be fast or naive");
    }
    prov.normalizer_mode = std::string(to_string(mode));
    prov.normalizer = L;
    prov.generator = "sample/" + a.sampler;
  } else if (a.construction == "oriented-sum" || a.construction == "random-orientation") {
    if (!model.mirrored()) throw UsageError(a.construction + " needs a mirrored model");
    w = sample_weights(model, a.n, a.seed);
    g = a.construction == "oriented-sum" ? sample_oriented_sum(w, a.seed)
                                          : sample_randomly_oriented_nr(w, a.seed);
    prov.normalizer_mode = "capacity-sum";
    prov.normalizer = w.sum_in();
    prov.generator = "sample/" + a.construction;
  } else if (a.construction == "independent-sum") {
    if (model.kind() != ModelKind::IndependentProduct && !model.degenerate()) {
      throw UsageError("independent-sum needs an independent (or constant) model");
    }
    auto res = sample_independent_sum(model.out_law(), model.in_law(), a.n, a.seed);
    w = std::move(res.weights);
    g = std::move(res.graph);
    prov.normalizer_mode = "mu-n";
    prov.normalizer = res.normalizer;
    prov.generator = "sample/independent-sum";
  } else {
    throw UsageError("unknown --construction '" + a.construction + "'");
  }

  if (!a.weights_out.empty()) emit(a.weights_out, out, [&](std::ostream& s) { write_weights_tsv(s, w); });
  emit(a.common.out_path, out, [&](std::ostream& s) { write_edge_list(s, g, prov); });
  return kOk;
}

// ---------------------------------------------------------------------------
// evolve
// ---------------------------------------------------------------------------

struct EvolveArgs {
  Common common;
  std::string model;
  std::size_t from = 0;
  std::size_t to = 0;
  std::uint64_t seed = 1;
  std::string normalizer = "mu-n";
  std::string in_path;
};

void setup_evolve(CLI::App& app, EvolveArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add_model(app, a.model);
  b.add(app, "--from", a.from, "Starting size N (>= 1)");
  b.add(app, "--to", a.to, "Final size (>= from)");
  b.add(app, "--seed", a.seed, "Random seed (thinning; also weights and starting graph without --in)");
  b.add(app, "--normalizer", a.normalizer, "mu-n | capacity-sum");
  b.add(app, "--in", a.in_path,
        "Start from this edge list; its header seed and model fix the weights");
}

int cmd_evolve(EvolveArgs& a, std::ostream& out) {
  if (finish_config(a.common, out)) return kOk;

  // With --in, the existing vertices keep the weights the file was sampled
  // with: the header seed and model, unless --model overrides the latter.
  MultiDigraph g;
  std::uint64_t weight_seed = a.seed;
  std::string model_text = a.model;
  if (!a.in_path.empty()) {
    const auto el = load_edge_list(a.in_path, 0);
    g = el.graph;
    if (auto it = el.header.find("seed"); it != el.header.end()) {
      try {
        weight_seed = std::stoull(it->second);
      } catch (const std::exception&) {
        throw EdgeListError("header seed is not an integer", 0);
      }
    }
    if (model_text.empty()) {
      if (auto it = el.header.find("model"); it != el.header.end()) model_text = it->second;
    }
    if (a.from == 0) a.from = g.n();
    if (g.n() != a.from) {
      throw UsageError("edge list has n=" + std::to_string(g.n()) + " but --from is " +
                       std::to_string(a.from));
    }
  }
  const WeightModel model = require_model(model_text);
  const NormalizerMode mode = parse_normalizer_mode(a.normalizer);
  if (mode == NormalizerMode::EmpiricalProduct) {
    throw UsageError("evolve needs a non-decreasing normalizer: use mu-n or capacity-sum");
  }
  if (a.from == 0) throw UsageError("--from must be >= 1");
  if (a.to < a.from) throw UsageError("--to must be >= --from");

  const double mu = moments(model).mu;
  const WeightSequence w = sample_weights(model, a.to, weight_seed);
  auto L = [&](std::size_t n) { return normalizer(w.prefix(n), mu, mode); };
  if (a.in_path.empty()) g = sample_graph_fast(w.prefix(a.from), L(a.from), a.seed);
  for (std::size_t n = a.from; n < a.to; ++n) g = evolve(g, w, L(n), L(n + 1), a.seed);

  Provenance prov;
  prov.seed = weight_seed;
  prov.model = to_json(model);
  prov.normalizer_mode = std::string(to_string(mode));
  prov.normalizer = L(a.to);
  prov.generator = "evolve/from=" + std::to_string(a.from) + "/thin-seed=" + std::to_string(a.seed);
  emit(a.common.out_path, out, [&](std::ostream& s) { write_edge_list(s, g, prov); });
  return kOk;
}

// ---------------------------------------------------------------------------
// components / stats
// ---------------------------------------------------------------------------

struct GraphArgs {
  Common common;
  std::string in_path;
  std::size_t n = 0;
  std::size_t top_k = 10;
  std::string model;
  std::uint64_t seed = 1;
  std::size_t kmax = 30;
};

void setup_components(CLI::App& app, GraphArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add(app, "--in", a.in_path, "Edge list (default: standard input)");
  app.add_option("input", a.in_path, "Edge list (same as --in)");
  b.add(app, "--n", a.n, "Vertex count, overriding the header");
  b.add(app, "--top-k", a.top_k, "Number of component sizes to list");
}

int cmd_components(GraphArgs& a, std::ostream& out) {
  if (finish_config(a.common, out)) return kOk;
  const auto el = load_edge_list(a.in_path, a.n);
  const auto report = component_report(summarize_components(el.graph), a.top_k);
  emit(a.common.out_path, out, [&](std::ostream& s) { s << report.dump(2) << '\n'; });
  return kOk;
}

void setup_stats(CLI::App& app, GraphArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add(app, "--in", a.in_path, "Edge list (default: standard input)");
  app.add_option("input", a.in_path, "Edge list (same as --in)");
  b.add(app, "--n", a.n, "Vertex count, overriding the header");
  b.add_model(app, a.model);
  b.add(app, "--seed", a.seed, "Seed for the mixed-Poisson quadrature");
  b.add(app, "--kmax", a.kmax, "Degree truncation for the fit");
}

json histogram_json(const Histogram& h) { return json(h); }

int cmd_stats(GraphArgs& a, std::ostream& out) {
  if (finish_config(a.common, out)) return kOk;
  const auto el = load_edge_list(a.in_path, a.n);
  const auto& g = el.graph;
  Histogram h_in;
  Histogram h_out;
  Histogram h_loops;
  for (const auto& d : degrees(g)) {
    record(h_in, d.d_in);
    record(h_out, d.d_out);
    record(h_loops, d.loops);
  }
  const double n = static_cast<double>(std::max<std::size_t>(g.n(), 1));
  json report = {
      {"n", g.n()},
      {"total_arcs", g.total_arcs()},
      {"loops", g.total_loops()},
      {"distinct_pairs", g.distinct_pairs()},
      {"arcs_per_vertex", static_cast<double>(g.total_arcs()) / n},
      {"mean_in_degree", histogram_moments(h_in).mean},
      {"mean_out_degree", histogram_moments(h_out).mean},
      {"in_degree_histogram", histogram_json(h_in)},
      {"out_degree_histogram", histogram_json(h_out)},
  };
  std::string model_text = a.model;
  if (model_text.empty()) {
    if (auto it = el.header.find("model"); it != el.header.end()) model_text = it->second;
  }
  if (!model_text.empty() && g.n() > 0) {
    const WeightModel model = parse_model(model_text);
    const Moments m = moments(model);
    auto finite = [](double x) { return std::isfinite(x) ? json(x) : json("inf"); };
    report["model"] = to_json(model);
    report["moments"] = {{"mu", m.mu}, {"nu_in", finite(m.nu_in)}, {"nu_out", finite(m.nu_out)},
                         {"rho", finite(m.rho)}};
    report["degree_fit"] = to_json(degree_fit_test(g, model, a.kmax, a.seed));
  }
  emit(a.common.out_path, out, [&](std::ostream& s) { s << report.dump(2) << '\n'; });
  return kOk;
}

// ---------------------------------------------------------------------------
// survival
// ---------------------------------------------------------------------------

struct SurvivalArgs {
  Common common;
  std::string model;
  std::string configuration = "mirrored-sum";
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
  std::size_t quadrature_size = 1'000'000;
  std::uint64_t seed = 0x5eed;
};

void setup_survival(CLI::App& app, SurvivalArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add_model(app, a.model);
  b.add(app, "--config,--configuration", a.configuration, "mirrored-sum | independent-sum | plain");
  b.add(app, "--tol", a.tol, "Fixed-point tolerance");
  b.add(app, "--max-iter", a.max_iter, "Iteration cap");
  b.add(app, "--quadrature-size", a.quadrature_size, "Monte Carlo quadrature points");
  b.add(app, "--seed", a.seed, "Quadrature seed");
}

int cmd_survival(SurvivalArgs& a, std::ostream& out) {
  if (finish_config(a.common, out)) return kOk;
  const WeightModel model = require_model(a.model);
  SolverOptions opt;
  opt.tol = a.tol;
  opt.max_iter = a.max_iter;
  opt.quadrature_size = a.quadrature_size;
  opt.seed = a.seed;
  json report = to_json(survival_fractions(model, parse_survival_configuration(a.configuration), opt));
  report["model"] = to_json(model);
  report["version"] = std::string(kVersion);
  emit(a.common.out_path, out, [&](std::ostream& s) { s << report.dump(2) << '\n'; });
  return kOk;
}

// ---------------------------------------------------------------------------
// scaling
// ---------------------------------------------------------------------------

struct ScalingArgs {
  Common common;
  std::string model;
  double tau = 0.0;
  bool critical = false;
  std::vector<std::size_t> n_list = {1u << 12, 1u << 13, 1u << 14, 1u << 15, 1u << 16, 1u << 17};
  std::size_t reps = 50;
  std::size_t bootstrap = 200;
  std::uint64_t seed = 1;
  std::string json_out;
};

void setup_scaling(CLI::App& app, ScalingArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add_model(app, a.model);
  b.add(app, "--tau", a.tau, "Pareto exponent; with --critical selects the tuned mirrored model");
  b.add_flag(app, "--critical", a.critical, "Rescale the Pareto capacity so that E[C^2]/E[C] = 1");
  b.add(app, "--n-list", a.n_list, "Graph sizes")->delimiter(',');
  b.add(app, "--reps", a.reps, "Replicates per size");
  b.add(app, "--bootstrap", a.bootstrap, "Bootstrap resamples for the slope interval");
  b.add(app, "--seed", a.seed, "Random seed");
  b.add(app, "--json-out", a.json_out, "Also write the full result as JSON");
}

int cmd_scaling(ScalingArgs& a, std::ostream& out) {
  if (finish_config(a.common, out)) return kOk;
  if (a.tau != 0.0 && !a.model.empty()) throw UsageError("give either --tau or --model, not both");
  WeightModel model = WeightModel::constant(1.0);
  if (a.tau != 0.0) {
    if (!a.critical) throw UsageError("--tau needs --critical (the experiment runs at criticality)");
    model = WeightModel::critical_pareto_mirrored(a.tau);
  } else if (!a.model.empty()) {
    model = parse_model(a.model);
  } else {
    throw UsageError("give --tau with --critical, or a critical --model");
  }
  const auto res = scaling_exponent_experiment(model, a.n_list, a.reps, a.seed, a.bootstrap);
  emit(a.common.out_path, out, [&](std::ostream& s) {
    s << "# model=" << to_json(model).dump() << '\n';
    s << "# seed=" << a.seed << " reps=" << a.reps << " bootstrap=" << a.bootstrap
      << " version=" << kVersion << '\n';
    write_scaling_tsv(s, res);
    auto fit = [&](const char* kind, const SlopeEstimate& e) {
      s << "# fit component=" << kind << " slope=" << json(e.slope).dump()
        << " ci_low=" << json(e.ci_low).dump() << " ci_high=" << json(e.ci_high).dump()
        << " alpha=" << json(res.alpha).dump() << '\n';
    };
    fit("weak", res.weak);
    fit("forward", res.forward);
    fit("strong", res.strong);
  });
  if (!a.json_out.empty()) {
    emit(a.json_out, out, [&](std::ostream& s) { s << to_json(res).dump(2) << '\n'; });
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string suite = "quick";
  std::uint64_t seed = 1;
  std::string graph;
  std::string model;
  double threshold = 0.01;
};

void setup_verify(CLI::App& app, VerifyArgs& a) {
  add_common(app, a.common);
  auto& b = a.common.bindings;
  b.add(app, "--suite", a.suite, "quick | full");
  b.add(app, "--seed", a.seed, "Random seed");
  b.add(app, "--graph", a.graph, "Check only this edge list's degrees against --model");
  b.add_model(app, a.model);
  b.add(app, "--threshold", a.threshold, "TV threshold for --graph");
}

int cmd_verify(VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (finish_config(a.common, out)) return kOk;
  std::vector<CheckResult> results;
  json head = {{"seed", a.seed}, {"version", std::string(kVersion)}};
  if (!a.graph.empty()) {
    const auto el = load_edge_list(a.graph, 0);
    results.push_back(check_degree_fit(el.graph, require_model(a.model), a.seed, a.threshold));
    head["graph"] = a.graph;
    head["model"] = to_json(parse_model(a.model));
  } else {
    if (!a.model.empty()) throw UsageError("--model is only used together with --graph");
    const Suite suite = parse_suite(a.suite);
    results = run_suite(suite, a.seed, [&](std::string_view name) { err << "verify: " << name << '\n'; });
    head["suite"] = a.suite;
  }
  const bool ok = all_pass(results);
  json checks = json::array();
  for (const auto& r : results) checks.push_back(to_json(r));
  head["pass"] = ok;
  head["checks"] = std::move(checks);
  emit(a.common.out_path, out, [&](std::ostream& s) { s << head.dump(2) << '\n'; });
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample and analyse conditionally Poissonian random digraphs", "cpdigraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  SampleArgs sample;
  EvolveArgs evolve_args;
  GraphArgs components;
  GraphArgs stats;
  SurvivalArgs survival;
  ScalingArgs scaling;
  VerifyArgs verify;

  auto* c_sample = app.add_subcommand("sample", "Sample a graph and write its edge list");
  setup_sample(*c_sample, sample);
  auto* c_evolve = app.add_subcommand("evolve", "Grow a graph from N to M vertices by thinning");
  setup_evolve(*c_evolve, evolve_args);
  auto* c_components = app.add_subcommand("components", "Strong and weak component report");
  setup_components(*c_components, components);
  auto* c_stats = app.add_subcommand("stats", "Degree statistics, optionally fitted against a model");
  setup_stats(*c_stats, stats);
  auto* c_survival = app.add_subcommand("survival", "Branching-process survival fractions");
  setup_survival(*c_survival, survival);
  auto* c_scaling = app.add_subcommand("scaling", "Critical component scaling experiment");
  setup_scaling(*c_scaling, scaling);
  auto* c_verify = app.add_subcommand("verify", "Run the statistical check suite");
  setup_verify(*c_verify, verify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c_sample->parsed()) return cmd_sample(sample, out);
    if (c_evolve->parsed()) return cmd_evolve(evolve_args, out);
    if (c_components->parsed()) return cmd_components(components, out);
    if (c_stats->parsed()) return cmd_stats(stats, out);
    if (c_survival->parsed()) return cmd_survival(survival, out);
    if (c_scaling->parsed()) return cmd_scaling(scaling, out);
    if (c_verify->parsed()) return cmd_verify(verify, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const EdgeListError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace cpdigraph::cli
