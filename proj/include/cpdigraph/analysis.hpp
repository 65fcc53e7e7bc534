#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cpdigraph/multidigraph.hpp"
#include "cpdigraph/weights.hpp"

namespace cpdigraph {

// ---------------------------------------------------------------------------
// Poisson laws
// ---------------------------------------------------------------------------

/// Total variation distance between Poisson(u) and Poisson(lambda),
/// accurate to 1e-12 absolute. Throws on negative arguments.
double poisson_tv(double u, double lambda);

/// Joint pmf of (in-degree, out-degree) on {0..kmax}^2. The mass outside
/// the square is reported as `tail`.
struct BivariatePmf {
  std::size_t kmax = 0;
  std::vector<double> mass;  ///< row-major, index j * (kmax + 1) + k
  double tail = 0.0;

  double at(std::size_t j, std::size_t k) const { return mass[j * (kmax + 1) + k]; }
  std::vector<double> marginal_in() const;
  std::vector<double> marginal_out() const;
};

/// Law of (Poisson(W_in), Poisson(W_out)) mixed over W. Exact for
/// degenerate models, otherwise averaged over mc_samples seeded stratified
/// draws of W (see stratified_sample).
BivariatePmf mixed_poisson_pmf(const WeightModel& model, std::size_t kmax,
                               std::size_t mc_samples, std::uint64_t seed);

/// Least-squares slope of log P(D_in >= k) against log k over the integer
/// range [k_lo, k_hi], using the in-degree marginal of `pmf`.
double tail_slope(const BivariatePmf& pmf, std::size_t k_lo, std::size_t k_hi);

// ---------------------------------------------------------------------------
// Degree and loop laws
// ---------------------------------------------------------------------------

struct DegreeFitResult {
  double tv = 0.0;
  double threshold = 0.01;
  bool pass = false;
  /// Expected TV of an exact sample of this size; above the threshold the
  /// test cannot pass reliably.
  double noise_floor = 0.0;
  bool underpowered = false;
  std::size_t n = 0;
};

/// Empirical joint (d_in, d_out) law over all vertices against the
/// mixed-Poisson limit, TV on {0..kmax}^2 plus one tail cell.
DegreeFitResult degree_fit_test(const MultiDigraph& g, const WeightModel& model, std::size_t kmax,
                                std::uint64_t seed, double threshold = 0.01,
                                std::size_t mc_samples = 1'000'000);

struct ConditionalDegreeParams {
  double lambda_in = 0.0;
  double lambda_out = 0.0;
  double lambda_total = 0.0;
};

/// Exact Poisson parameters of d_in, d_out and total degree of vertex v
/// given the weights.
ConditionalDegreeParams conditional_degree_params(const WeightSequence& w, double normalizer,
                                                  std::size_t v);

struct DependenceResult {
  double statistic = 0.0;
  /// Components attaining the maximum, as "d_in[i]" / "d_out[j]".
  std::string first;
  std::string second;
  std::size_t n = 0;
  std::size_t reps = 0;
};

struct IndependenceOptions {
  NormalizerMode mode = NormalizerMode::DeterministicMuN;
  /// Resample whole graphs with the fast sampler instead of only the arcs
  /// incident to the tracked vertices. Same law, much slower.
  bool full_graph = false;
};

/// Tracks vertices 0..k-1 under one fixed weight realization and resamples
/// their degrees `reps` times. The statistic is the largest TV, over pairs
/// of degree components belonging to different tracked vertices, between
/// the empirical joint law and the product of empirical marginals.
DependenceResult independence_test(const WeightModel& model, std::size_t n, std::size_t k,
                                   std::size_t reps, std::uint64_t seed,
                                   const IndependenceOptions& options = {});

struct LoopTestResult {
  double expected_mean = 0.0;  ///< rho / mu
  double mean = 0.0;
  double variance = 0.0;
  double z_score = 0.0;
  double chi_square = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  bool pass = false;  ///< chi-square at the 1% level
  std::vector<std::uint64_t> histogram;
};

/// Total loop counts of `reps` independent graphs (fresh weights each time)
/// against Poisson(rho / mu). Throws std::domain_error if rho is infinite.
LoopTestResult loop_test(const WeightModel& model, std::size_t n, std::size_t reps,
                         std::uint64_t seed, NormalizerMode mode = NormalizerMode::DeterministicMuN);

// ---------------------------------------------------------------------------
// Branching-process survival
// ---------------------------------------------------------------------------

enum class Direction { Forward, Backward };

struct SolverOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
  std::size_t quadrature_size = 1'000'000;
  std::uint64_t seed = 0x5eedULL;
};

/// Thrown when the fixed-point iteration hits max_iter.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double last_iterate)
      : std::runtime_error(what), last_iterate_(last_iterate) {}
  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

/// Equal-weight quadrature points for the weight law: the single atom for
/// degenerate models, seeded stratified draws otherwise.
std::vector<WeightPair> quadrature_points(const WeightModel& model, const SolverOptions& options);

struct ExtinctionResult {
  double q = 1.0;
  std::size_t iterations = 0;
  double mean_offspring = 0.0;
  std::vector<double> trace;  ///< iterates q_1, q_2, ... (empty when q = 1 is returned directly)
};

/// Smallest fixed point of q = E[(W_in / mu) exp(-W_out (1 - q))]
/// (backward: roles swapped), by monotone iteration from 0. Returns q = 1
/// without iterating when rho / mu <= 1.
ExtinctionResult solve_extinction(const WeightModel& model, Direction direction,
                                  const SolverOptions& options = {});

/// Extinction probability of a Galton-Watson process with mixed-Poisson
/// offspring, mixing law `law` (no size bias).
ExtinctionResult solve_mixed_poisson_extinction(const MarginalLaw& law,
                                                const SolverOptions& options = {});

enum class SurvivalConfiguration { MirroredSum, IndependentSum, Plain };

std::string_view to_string(SurvivalConfiguration c);
SurvivalConfiguration parse_survival_configuration(std::string_view text);

struct SurvivalReport {
  SurvivalConfiguration configuration = SurvivalConfiguration::Plain;
  double q_f = 1.0;
  double q_b = 1.0;
  double zeta_f = 0.0;  ///< fraction of vertices with a giant forward cluster
  double zeta_b = 0.0;
  double zeta = 0.0;    ///< forward survival averaged over the weight law
  double pi = 0.0;      ///< strong-giant fraction
  bool pi_conjectural = false;
  /// Giant of the undirected multigraph obtained by forgetting directions.
  double zeta_weak = 0.0;
  double critical_ratio_in = 0.0;   ///< nu_in / mu
  double critical_ratio_out = 0.0;  ///< nu_out / mu
  double mean_offspring = 0.0;      ///< rho / mu
};

/// mirrored-sum: zeta = E[z(C)], pi = E[z(C)^2] with z(c) = 1 - exp(-c (1 - q)).
/// independent-sum: pi = zeta_1 * zeta_2 from two mixed-Poisson processes.
/// plain: pi = E[z_f(W) z_b(W)], flagged conjectural.
SurvivalReport survival_fractions(const WeightModel& model, SurvivalConfiguration configuration,
                                  const SolverOptions& options = {});

// ---------------------------------------------------------------------------
// Critical scaling
// ---------------------------------------------------------------------------

/// min((tau - 2) / (tau - 1), 2 / 3); tau = +inf gives 2/3.
double critical_cluster_exponent(double tau);

struct ScalingPoint {
  std::size_t n = 0;
  std::vector<double> weak;
  std::vector<double> forward;
  std::vector<double> strong;
  double median_weak = 0.0;
  double mean_weak = 0.0;
  double median_forward = 0.0;
  double mean_forward = 0.0;
  double median_strong = 0.0;
  double mean_strong = 0.0;
};

struct SlopeEstimate {
  double slope = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct ScalingResult {
  double tau = std::numeric_limits<double>::infinity();
  double alpha = 2.0 / 3.0;
  std::vector<ScalingPoint> points;
  SlopeEstimate weak;
  SlopeEstimate forward;
  SlopeEstimate strong;
};

/// Samples `reps` oriented-sum graphs per N for a critical mirrored model
/// (E[C^2] / E[C] = 1), records largest weak, forward and strong
/// component sizes, and regresses log median size on log N. Confidence
/// intervals are 95% percentile bootstrap over replicates.
ScalingResult scaling_exponent_experiment(const WeightModel& model,
                                          std::span<const std::size_t> n_list, std::size_t reps,
                                          std::uint64_t seed, std::size_t bootstrap = 200);

}  // namespace cpdigraph
