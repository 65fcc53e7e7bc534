#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cpdigraph/multidigraph.hpp"
#include "cpdigraph/weights.hpp"

namespace cpdigraph {

/// One statistical verdict. `gating` results decide pass/fail of a suite;
/// the others are reported for context only.
struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  /// How statistic is compared to threshold: "<", "p>=" (p-value) or "|z|<".
  std::string relation;
  bool pass = false;
  bool gating = true;
  nlohmann::json detail = nlohmann::json::object();
};

nlohmann::json to_json(const CheckResult& r);

/// True iff every gating result passes.
bool all_pass(const std::vector<CheckResult>& results);

/// Naive and fast samplers at N in {2, 3}, constant and mirrored Pareto
/// weights: per-pair multiplicity histograms against the exact Poisson
/// laws, one combined chi-square per (weights, N, sampler) at 1%.
std::vector<CheckResult> check_sampler_exactness(std::uint64_t seed, std::size_t samples = 100'000);

/// Oriented sum, randomly oriented NR(2C) and the direct model on the same
/// capacities. N = 2: pairwise TV of total-arc and per-pair laws.
/// Large N: two-sample chi-square on total arcs and loops, plus in/out
/// degree symmetry of the oriented sum.
std::vector<CheckResult> check_construction_equivalence(std::uint64_t seed,
                                                        std::size_t reps_small = 100'000,
                                                        std::size_t n_large = 1000,
                                                        std::size_t reps_large = 1000);

/// Thinning chain 2 -> 5 against direct sampling at 5, TV of total arcs.
std::vector<CheckResult> check_evolution(std::uint64_t seed, std::size_t reps = 100'000);

/// Joint degree TV for Constant(2) at N and the in-degree tail slope of the
/// mixed-Poisson law for Pareto(3.5, 1) over k in [10, 100].
std::vector<CheckResult> check_degree_limit(std::uint64_t seed, std::size_t n = 100'000,
                                            std::size_t empirical_tail_n = 1'000'000);

/// Degree TV of a given graph against a model (negative control when the
/// graph came from another model).
CheckResult check_degree_fit(const MultiDigraph& g, const WeightModel& model, std::uint64_t seed,
                             double threshold = 0.01);

/// Constant(1) with L = N at N in {1, 10, min(n, 1000)} (chi-square against
/// Poisson(1)) and the Constant(2) loop mean at N = n within 3 sigma of 2.
std::vector<CheckResult> check_loops(std::uint64_t seed, std::size_t n = 10'000,
                                     std::size_t reps = 10'000);

struct GiantOptions {
  std::size_t n = 100'000;
  std::size_t reps = 10;
  double weak_tol = 0.01;
  double strong_tol = 0.015;
  /// Gate on the largest weak fraction matching zeta (the forward survival
  /// fraction). When false that comparison is reported but the weak
  /// fraction gates against zeta_weak instead.
  bool weak_against_zeta_gates = true;
};

/// Largest weak and strong fractions of the mirrored Constant(2) sum graph
/// and the independent sum of Constant(2) laws, against the branching
/// predictions.
std::vector<CheckResult> check_giant_components(std::uint64_t seed, const GiantOptions& options = {});

struct ScalingCheckOptions {
  std::vector<std::size_t> n_list = {1u << 12, 1u << 13, 1u << 14, 1u << 15, 1u << 16, 1u << 17};
  std::size_t reps = 50;
  std::size_t bootstrap = 200;
  double tol = 0.1;
  /// Gate on the weak slope; when false the forward slope gates instead.
  bool weak_gates = true;
};

/// Critical mirrored Pareto(3.5): fitted growth exponent of the median
/// largest component against min((tau-2)/(tau-1), 2/3).
std::vector<CheckResult> check_critical_scaling(std::uint64_t seed,
                                                const ScalingCheckOptions& options = {});

/// Dependence statistic for Constant(1), k = 2 at N = 1e4 below 0.01 and
/// below its value at N = 1e2. The N = 1e2 signal is about 0.003, so fewer
/// than ~1e6 replicates leave the comparison dominated by sampling noise.
std::vector<CheckResult> check_independence(std::uint64_t seed, std::size_t reps = 1'000'000);

/// Symmetry, diagonal, range and triangle properties of poisson_tv on random
/// arguments, and agreement with a direct series.
std::vector<CheckResult> check_poisson_tv(std::uint64_t seed, std::size_t pairs = 1000);

enum class Suite { Quick, Full };
Suite parse_suite(std::string_view text);

/// Called before each check group starts.
using ProgressFn = std::function<void(std::string_view)>;

std::vector<CheckResult> run_suite(Suite suite, std::uint64_t seed, const ProgressFn& progress = {});

}  // namespace cpdigraph
