#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpdigraph/random.hpp"

namespace cpdigraph {

/// One vertex's weights: expected in-degree and out-degree scales.
struct WeightPair {
  double w_in = 0.0;
  double w_out = 0.0;

  friend bool operator==(const WeightPair&, const WeightPair&) = default;
};

struct ConstantLaw {
  double value = 1.0;
};

/// Pareto law with density exponent tau: P(X > x) = (x / xmin)^-(tau - 1).
struct ParetoLaw {
  double tau = 3.0;
  double xmin = 1.0;
};

using MarginalLaw = std::variant<ConstantLaw, ParetoLaw>;

/// Throws std::invalid_argument unless the law has positive support and a
/// finite mean.
void validate(const MarginalLaw& law);

double mean(const MarginalLaw& law);
/// +infinity when the integral diverges.
double second_moment(const MarginalLaw& law);
double draw(const MarginalLaw& law, CounterRng& rng);
/// Quantile function, u in (0, 1).
double quantile(const MarginalLaw& law, double u);

enum class ModelKind {
  Constant,
  IndependentProduct,
  MirroredCapacity,
  ParetoMirrored,
  OrientedNR,
};

std::string_view to_string(ModelKind kind);

struct Moments {
  double mu = 0.0;
  double nu_in = 0.0;
  double nu_out = 0.0;
  double rho = 0.0;
};

/// The joint law of (w_in, w_out). Mirrored kinds set w_in = w_out.
class WeightModel {
 public:
  static WeightModel constant(double c);
  static WeightModel independent(MarginalLaw in_law, MarginalLaw out_law);
  static WeightModel mirrored(MarginalLaw capacity);
  static WeightModel pareto_mirrored(double tau, double xmin);
  static WeightModel oriented_nr(MarginalLaw capacity);

  /// Mirrored Pareto capacity rescaled so that E[L^2] / E[L] = 1.
  static WeightModel critical_pareto_mirrored(double tau);

  ModelKind kind() const noexcept { return kind_; }
  const MarginalLaw& in_law() const noexcept { return in_law_; }
  const MarginalLaw& out_law() const noexcept { return out_law_; }
  bool mirrored() const noexcept { return kind_ != ModelKind::IndependentProduct; }
  /// True if both marginals are point masses.
  bool degenerate() const noexcept;

  WeightPair draw(CounterRng& rng) const;

 private:
  WeightModel(ModelKind kind, MarginalLaw in_law, MarginalLaw out_law);

  ModelKind kind_;
  MarginalLaw in_law_;
  MarginalLaw out_law_;
};

Moments moments(const WeightModel& model);

/// m draws of the weight law with one uniform point in each of m equal
/// cells of (0, 1) per marginal; the cells of the two marginals of an
/// independent model are paired by a random permutation. Each point is
/// still distributed as the law, but tail regions are always covered.
std::vector<WeightPair> stratified_sample(const WeightModel& model, std::size_t m, CounterRng& rng);

/// An ordered weight realization with cached sums.
class WeightSequence {
 public:
  WeightSequence() = default;
  explicit WeightSequence(std::vector<WeightPair> pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  const WeightPair& operator[](std::size_t i) const { return pairs_[i]; }
  std::span<const WeightPair> pairs() const noexcept { return pairs_; }

  double sum_in() const noexcept { return sum_in_; }
  double sum_out() const noexcept { return sum_out_; }
  double sum_products() const noexcept { return sum_products_; }

  /// Every vertex has w_in == w_out.
  bool mirrored() const noexcept { return mirrored_; }

  std::vector<double> in_weights() const;
  std::vector<double> out_weights() const;

  WeightSequence prefix(std::size_t n) const;

 private:
  std::vector<WeightPair> pairs_;
  double sum_in_ = 0.0;
  double sum_out_ = 0.0;
  double sum_products_ = 0.0;
  bool mirrored_ = true;
};

/// N i.i.d. draws; pair i depends only on (seed, i), so sequences for
/// different N share prefixes.
WeightSequence sample_weights(const WeightModel& model, std::size_t n, std::uint64_t seed);

enum class NormalizerMode {
  DeterministicMuN,
  EmpiricalProduct,
  CapacitySum,
};

std::string_view to_string(NormalizerMode mode);
NormalizerMode parse_normalizer_mode(std::string_view text);

/// L_N for the given weights. CapacitySum requires mirrored weights.
double normalizer(const WeightSequence& w, double mu, NormalizerMode mode);

}  // namespace cpdigraph
