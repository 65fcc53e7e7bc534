#include "cpdigraph/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

namespace cpdigraph {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_fields(const json& j, std::initializer_list<std::string_view> allowed,
                    std::string_view what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  const std::set<std::string_view> ok(allowed);
  for (const auto& item : j.items()) {
    if (!ok.contains(item.key())) {
      throw std::invalid_argument("unknown field '" + item.key() + "' in " + std::string(what));
    }
  }
  for (std::string_view key : allowed) {
    if (!j.contains(std::string(key))) {
      throw std::invalid_argument("missing field '" + std::string(key) + "' in " +
                                  std::string(what));
    }
  }
}

double number_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double parse_double(std::string_view text) {
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::pair<double, double> parse_two(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw std::invalid_argument("expected TAU,XMIN but got '" + std::string(text) + "'");
  }
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

template <typename T>
bool parse_unsigned(std::string_view text, T& out) {
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

json to_json(const MarginalLaw& law) {
  return std::visit(overloaded{
                        [](const ConstantLaw& c) { return json{{"kind", "constant"}, {"c", c.value}}; },
                        [](const ParetoLaw& p) {
                          return json{{"kind", "pareto"}, {"tau", p.tau}, {"xmin", p.xmin}};
                        },
                    },
                    law);
}

json to_json(const WeightModel& model) {
  switch (model.kind()) {
    case ModelKind::Constant:
      return {{"kind", "constant"}, {"c", std::get<ConstantLaw>(model.in_law()).value}};
    case ModelKind::ParetoMirrored: {
      const auto& p = std::get<ParetoLaw>(model.in_law());
      return {{"kind", "pareto-mirrored"}, {"tau", p.tau}, {"xmin", p.xmin}};
    }
    case ModelKind::MirroredCapacity:
      return {{"kind", "mirrored"}, {"capacity", to_json(model.in_law())}};
    case ModelKind::OrientedNR:
      return {{"kind", "oriented-nr"}, {"capacity", to_json(model.in_law())}};
    case ModelKind::IndependentProduct:
      return {{"kind", "independent"}, {"in", to_json(model.in_law())}, {"out", to_json(model.out_law())}};
  }
  throw std::logic_error("unhandled model kind");
}

MarginalLaw marginal_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("marginal law needs a string 'kind'");
  }
  const auto kind = j["kind"].get<std::string>();
  MarginalLaw law;
  if (kind == "constant") {
    require_fields(j, {"kind", "c"}, "constant law");
    law = ConstantLaw{number_field(j, "c")};
  } else if (kind == "pareto") {
    require_fields(j, {"kind", "tau", "xmin"}, "pareto law");
    law = ParetoLaw{number_field(j, "tau"), number_field(j, "xmin")};
  } else {
    throw std::invalid_argument("unknown marginal kind '" + kind + "'");
  }
  validate(law);
  return law;
}

WeightModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("weight model needs a string 'kind'");
  }
  const auto kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    require_fields(j, {"kind", "c"}, "constant model");
    return WeightModel::constant(number_field(j, "c"));
  }
  if (kind == "pareto-mirrored") {
    require_fields(j, {"kind", "tau", "xmin"}, "pareto-mirrored model");
    return WeightModel::pareto_mirrored(number_field(j, "tau"), number_field(j, "xmin"));
  }
  if (kind == "mirrored") {
    require_fields(j, {"kind", "capacity"}, "mirrored model");
    return WeightModel::mirrored(marginal_from_json(j["capacity"]));
  }
  if (kind == "oriented-nr") {
    require_fields(j, {"kind", "capacity"}, "oriented-nr model");
    return WeightModel::oriented_nr(marginal_from_json(j["capacity"]));
  }
  if (kind == "independent") {
    require_fields(j, {"kind", "in", "out"}, "independent model");
    return WeightModel::independent(marginal_from_json(j["in"]), marginal_from_json(j["out"]));
  }
  throw std::invalid_argument("unknown model kind '" + kind + "'");
}

MarginalLaw parse_marginal(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("law must look like constant:C or pareto:TAU,XMIN");
  }
  const auto head = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  MarginalLaw law;
  if (head == "constant") {
    law = ConstantLaw{parse_double(rest)};
  } else if (head == "pareto") {
    const auto [tau, xmin] = parse_two(rest);
    law = ParetoLaw{tau, xmin};
  } else {
    throw std::invalid_argument("unknown law '" + std::string(head) + "'");
  }
  validate(law);
  return law;
}

WeightModel parse_model(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    return model_from_json(json::parse(text));
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("model must look like KIND:PARAMS, e.g. constant:2");
  }
  const auto head = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (head == "constant") return WeightModel::constant(parse_double(rest));
  if (head == "pareto-mirrored") {
    const auto [tau, xmin] = parse_two(rest);
    return WeightModel::pareto_mirrored(tau, xmin);
  }
  if (head == "mirrored") return WeightModel::mirrored(parse_marginal(rest));
  if (head == "oriented-nr") return WeightModel::oriented_nr(parse_marginal(rest));
  if (head == "independent") {
    const auto slash = rest.find('/');
    if (slash == std::string_view::npos) {
      throw std::invalid_argument("independent model must look like independent:IN_LAW/OUT_LAW");
    }
    return WeightModel::independent(parse_marginal(rest.substr(0, slash)),
                                    parse_marginal(rest.substr(slash + 1)));
  }
  throw std::invalid_argument("unknown model kind '" + std::string(head) + "'");
}

void write_edge_list(std::ostream& out, const MultiDigraph& g, const Provenance& provenance) {
  out << "# n=" << g.n() << " seed=" << provenance.seed << '\n';
  if (provenance.model) out << "# model=" << provenance.model->dump() << '\n';
  if (provenance.normalizer_mode || provenance.normalizer) {
    out << "#";
    if (provenance.normalizer_mode) out << " normalizer=" << *provenance.normalizer_mode;
    if (provenance.normalizer) out << " L_N=" << json(*provenance.normalizer).dump();
    out << '\n';
  }
  out << "# generator=" << (provenance.generator.empty() ? "unknown" : provenance.generator)
      << " version=" << kVersion << '\n';
  out << "# arcs=" << g.total_arcs() << " loops=" << g.total_loops() << '\n';
  for (const Arc& a : g.arcs()) {
    out << (a.src + 1) << '\t' << (a.dst + 1) << '\t' << a.mult << '\n';
  }
}

EdgeList read_edge_list(std::istream& in, std::optional<std::size_t> n_override) {
  EdgeList result;
  std::vector<Arc> arcs;
  std::vector<std::size_t> arc_lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      if (body.starts_with("model=")) {
        result.header["model"] = std::string(body.substr(6));
        continue;
      }
      std::istringstream tokens{std::string(body)};
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) result.header[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      continue;
    }
    std::istringstream fields(line);
    std::string s_src;
    std::string s_dst;
    std::string s_mult;
    std::string extra;
    if (!(fields >> s_src >> s_dst >> s_mult) || (fields >> extra)) {
      throw EdgeListError("expected 'src<TAB>dst<TAB>multiplicity'", lineno);
    }
    std::uint64_t src = 0;
    std::uint64_t dst = 0;
    std::uint64_t mult = 0;
    if (!parse_unsigned(s_src, src) || !parse_unsigned(s_dst, dst) ||
        !parse_unsigned(s_mult, mult)) {
      throw EdgeListError("non-integer field", lineno);
    }
    if (src == 0 || dst == 0) throw EdgeListError("vertex ids are 1-based", lineno);
    if (mult == 0) throw EdgeListError("multiplicity must be >= 1", lineno);
    if (src > std::numeric_limits<Vertex>::max() || dst > std::numeric_limits<Vertex>::max()) {
      throw EdgeListError("vertex id too large", lineno);
    }
    arcs.push_back({static_cast<Vertex>(src - 1), static_cast<Vertex>(dst - 1), mult});
    arc_lines.push_back(lineno);
  }

  std::size_t n = 0;
  if (n_override) {
    n = *n_override;
  } else if (auto it = result.header.find("n"); it != result.header.end()) {
    if (!parse_unsigned(std::string_view(it->second), n)) {
      throw EdgeListError("header n is not an integer", 0);
    }
  } else {
    throw EdgeListError("no n declared", 0);
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].src >= n || arcs[i].dst >= n) {
      throw EdgeListError("vertex id exceeds n=" + std::to_string(n), arc_lines[i]);
    }
  }
  result.graph = MultiDigraph::from_arcs(n, std::move(arcs));
  return result;
}

void write_weights_tsv(std::ostream& out, const WeightSequence& w) {
  out << "# index\tw_in\tw_out\n";
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << (i + 1) << '\t' << json(w[i].w_in).dump() << '\t' << json(w[i].w_out).dump() << '\n';
  }
}

json component_report(const ComponentSummary& s, std::size_t top_k) {
  return {
      {"n", s.weak.label.size()},
      {"largest_weak", s.largest_weak},
      {"largest_strong", s.largest_strong},
      {"weak_count", s.weak.count()},
      {"strong_count", s.strong.count()},
      {"weak_sizes_topk", s.weak.top_sizes(top_k)},
      {"strong_sizes_topk", s.strong.top_sizes(top_k)},
  };
}

json to_json(const SurvivalReport& r) {
  return {
      {"configuration", std::string(to_string(r.configuration))},
      {"q_f", r.q_f},
      {"q_b", r.q_b},
      {"zeta_f", r.zeta_f},
      {"zeta_b", r.zeta_b},
      {"zeta", r.zeta},
      {"pi", r.pi},
      {"pi_conjectural", r.pi_conjectural},
      {"zeta_weak", r.zeta_weak},
      {"critical_ratio_in", std::isfinite(r.critical_ratio_in) ? json(r.critical_ratio_in) : json("inf")},
      {"critical_ratio_out", std::isfinite(r.critical_ratio_out) ? json(r.critical_ratio_out) : json("inf")},
      {"mean_offspring", std::isfinite(r.mean_offspring) ? json(r.mean_offspring) : json("inf")},
  };
}

json to_json(const DegreeFitResult& r) {
  return {{"tv", r.tv},
          {"threshold", r.threshold},
          {"pass", r.pass},
          {"noise_floor", r.noise_floor},
          {"underpowered", r.underpowered},
          {"n", r.n}};
}

json to_json(const LoopTestResult& r) {
  return {{"expected_mean", r.expected_mean}, {"mean", r.mean},       {"variance", r.variance},
          {"z_score", r.z_score},             {"chi_square", r.chi_square}, {"dof", r.dof},
          {"p_value", r.p_value},             {"pass", r.pass}};
}

json to_json(const DependenceResult& r) {
  return {{"statistic", r.statistic}, {"first", r.first}, {"second", r.second},
          {"n", r.n},                 {"reps", r.reps}};
}

json to_json(const ScalingResult& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back({{"n", p.n},
                      {"median_weak", p.median_weak},
                      {"mean_weak", p.mean_weak},
                      {"median_forward", p.median_forward},
                      {"mean_forward", p.mean_forward},
                      {"median_strong", p.median_strong},
                      {"mean_strong", p.mean_strong}});
  }
  auto slope = [](const SlopeEstimate& s) {
    return json{{"slope", s.slope}, {"ci_low", s.ci_low}, {"ci_high", s.ci_high}};
  };
  return {{"tau", std::isfinite(r.tau) ? json(r.tau) : json("inf")},
          {"alpha", r.alpha},
          {"points", points},
          {"weak", slope(r.weak)},
          {"forward", slope(r.forward)},
          {"strong", slope(r.strong)}};
}

void write_scaling_tsv(std::ostream& out, const ScalingResult& r) {
  auto block = [&](const char* kind, auto median_of, auto mean_of) {
    out << "# component=" << kind << "\n# N\tmedian_size\tmean_size\n";
    for (const auto& p : r.points) {
      out << p.n << '\t' << json(median_of(p)).dump() << '\t' << json(mean_of(p)).dump() << '\n';
    }
  };
  block("weak", [](const ScalingPoint& p) { return p.median_weak; },
        [](const ScalingPoint& p) { return p.mean_weak; });
  block("forward", [](const ScalingPoint& p) { return p.median_forward; },
        [](const ScalingPoint& p) { return p.mean_forward; });
  block("strong", [](const ScalingPoint& p) { return p.median_strong; },
        [](const ScalingPoint& p) { return p.mean_strong; });
}

}  // namespace cpdigraph
