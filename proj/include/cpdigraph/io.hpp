#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/multidigraph.hpp"
#include "cpdigraph/weights.hpp"

namespace cpdigraph {

inline constexpr std::string_view kVersion = "0.1.0";

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Weight models
// ---------------------------------------------------------------------------

json to_json(const MarginalLaw& law);
json to_json(const WeightModel& model);

/// Inverse of to_json. Unknown or missing fields raise std::invalid_argument.
MarginalLaw marginal_from_json(const json& j);
WeightModel model_from_json(const json& j);

/// Compact command-line form, or a JSON object if the text starts with '{':
///   constant:C | pareto-mirrored:TAU,XMIN | mirrored:LAW | oriented-nr:LAW |
///   independent:IN_LAW/OUT_LAW
/// where LAW is constant:C or pareto:TAU,XMIN.
WeightModel parse_model(std::string_view text);
MarginalLaw parse_marginal(std::string_view text);

// ---------------------------------------------------------------------------
// Edge lists
// ---------------------------------------------------------------------------

/// Metadata written as '#' lines ahead of the arcs.
struct Provenance {
  std::uint64_t seed = 0;
  std::optional<json> model;
  std::optional<std::string> normalizer_mode;
  std::optional<double> normalizer;
  std::string generator;
};

/// Header, then one "src\tdst\tmultiplicity" line per distinct pair,
/// 1-based ids, sorted by (src, dst). First header line is "# n=N seed=S".
void write_edge_list(std::ostream& out, const MultiDigraph& g, const Provenance& provenance);

class EdgeListError : public std::runtime_error {
 public:
  EdgeListError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct EdgeList {
  MultiDigraph graph;
  /// key=value pairs found in the header ("model" holds the raw JSON text).
  std::map<std::string, std::string> header;
};

/// Parses the format written by write_edge_list. `n_override` replaces the
/// header's n; without either, throws EdgeListError("no n declared").
EdgeList read_edge_list(std::istream& in, std::optional<std::size_t> n_override = std::nullopt);

/// A "# index\tw_in\tw_out" header, then one line per vertex, 1-based.
void write_weights_tsv(std::ostream& out, const WeightSequence& w);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

json component_report(const ComponentSummary& s, std::size_t top_k = 10);
json to_json(const SurvivalReport& r);
json to_json(const DegreeFitResult& r);
json to_json(const LoopTestResult& r);
json to_json(const DependenceResult& r);
json to_json(const ScalingResult& r);

/// "N\tmedian_size\tmean_size" rows for the largest weak, forward and
/// strong components, one block per kind.
void write_scaling_tsv(std::ostream& out, const ScalingResult& r);

}  // namespace cpdigraph
