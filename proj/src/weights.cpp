#include "cpdigraph/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpdigraph {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

bool means_agree(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace

void validate(const MarginalLaw& law) {
  std::visit(overloaded{
                 [](const ConstantLaw& c) {
                   if (!(c.value > 0.0) || !std::isfinite(c.value)) {
                     throw std::invalid_argument("constant weight must be finite and > 0");
                   }
                 },
                 [](const ParetoLaw& p) {
                   if (!(p.tau > 2.0) || !std::isfinite(p.tau)) {
                     throw std::invalid_argument("Pareto tail exponent tau must be > 2");
                   }
                   if (!(p.xmin > 0.0) || !std::isfinite(p.xmin)) {
                     throw std::invalid_argument("Pareto xmin must be finite and > 0");
                   }
                 },
             },
             law);
}

double mean(const MarginalLaw& law) {
  return std::visit(overloaded{
                        [](const ConstantLaw& c) { return c.value; },
                        [](const ParetoLaw& p) { return p.xmin * (p.tau - 1.0) / (p.tau - 2.0); },
                    },
                    law);
}

double second_moment(const MarginalLaw& law) {
  return std::visit(overloaded{
                        [](const ConstantLaw& c) { return c.value * c.value; },
                        [](const ParetoLaw& p) {
                          if (p.tau <= 3.0) return kInf;
                          return p.xmin * p.xmin * (p.tau - 1.0) / (p.tau - 3.0);
                        },
                    },
                    law);
}

double quantile(const MarginalLaw& law, double u) {
  return std::visit(overloaded{
                        [](const ConstantLaw& c) { return c.value; },
                        [u](const ParetoLaw& p) {
                          return p.xmin * std::pow(1.0 - u, -1.0 / (p.tau - 1.0));
                        },
                    },
                    law);
}

double draw(const MarginalLaw& law, CounterRng& rng) {
  return std::visit(overloaded{
                        [](const ConstantLaw& c) { return c.value; },
                        [&rng](const ParetoLaw& p) {
                          return p.xmin * std::pow(rng.uniform_pos(), -1.0 / (p.tau - 1.0));
                        },
                    },
                    law);
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Constant: return "constant";
    case ModelKind::IndependentProduct: return "independent";
    case ModelKind::MirroredCapacity: return "mirrored";
    case ModelKind::ParetoMirrored: return "pareto-mirrored";
    case ModelKind::OrientedNR: return "oriented-nr";
  }
  return "unknown";
}

WeightModel::WeightModel(ModelKind kind, MarginalLaw in_law, MarginalLaw out_law)
    : kind_(kind), in_law_(in_law), out_law_(out_law) {
  validate(in_law_);
  validate(out_law_);
  if (!means_agree(cpdigraph::mean(in_law_), cpdigraph::mean(out_law_))) {
    throw std::invalid_argument("weight model requires E[w_in] == E[w_out]");
  }
}

WeightModel WeightModel::constant(double c) {
  return {ModelKind::Constant, ConstantLaw{c}, ConstantLaw{c}};
}

WeightModel WeightModel::independent(MarginalLaw in_law, MarginalLaw out_law) {
  return {ModelKind::IndependentProduct, in_law, out_law};
}

WeightModel WeightModel::mirrored(MarginalLaw capacity) {
  return {ModelKind::MirroredCapacity, capacity, capacity};
}

WeightModel WeightModel::pareto_mirrored(double tau, double xmin) {
  const ParetoLaw law{tau, xmin};
  return {ModelKind::ParetoMirrored, law, law};
}

WeightModel WeightModel::oriented_nr(MarginalLaw capacity) {
  return {ModelKind::OrientedNR, capacity, capacity};
}

WeightModel WeightModel::critical_pareto_mirrored(double tau) {
  if (!(tau > 3.0)) {
    throw std::invalid_argument("critical tuning needs tau > 3 (finite second moment)");
  }
  // E[L^2]/E[L] = xmin (tau - 2) / (tau - 3) for Pareto.
  return pareto_mirrored(tau, (tau - 3.0) / (tau - 2.0));
}

bool WeightModel::degenerate() const noexcept {
  return std::holds_alternative<ConstantLaw>(in_law_) &&
         std::holds_alternative<ConstantLaw>(out_law_);
}

WeightPair WeightModel::draw(CounterRng& rng) const {
  if (mirrored()) {
    const double c = cpdigraph::draw(in_law_, rng);
    return {c, c};
  }
  const double w_in = cpdigraph::draw(in_law_, rng);
  const double w_out = cpdigraph::draw(out_law_, rng);
  return {w_in, w_out};
}

Moments moments(const WeightModel& model) {
  Moments m;
  m.mu = mean(model.in_law());
  m.nu_in = second_moment(model.in_law());
  m.nu_out = second_moment(model.out_law());
  m.rho = model.mirrored() ? m.nu_in : mean(model.in_law()) * mean(model.out_law());
  return m;
}

WeightSequence::WeightSequence(std::vector<WeightPair> pairs) : pairs_(std::move(pairs)) {
  long double s_in = 0.0L;
  long double s_out = 0.0L;
  long double s_prod = 0.0L;
  for (const auto& p : pairs_) {
    if (!(p.w_in > 0.0) || !(p.w_out > 0.0) || !std::isfinite(p.w_in) ||
        !std::isfinite(p.w_out)) {
      throw std::invalid_argument("weights must be finite and > 0");
    }
    s_in += p.w_in;
    s_out += p.w_out;
    s_prod += static_cast<long double>(p.w_in) * p.w_out;
    if (p.w_in != p.w_out) mirrored_ = false;
  }
  sum_in_ = static_cast<double>(s_in);
  sum_out_ = static_cast<double>(s_out);
  sum_products_ = static_cast<double>(s_prod);
}

std::vector<double> WeightSequence::in_weights() const {
  std::vector<double> out(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) out[i] = pairs_[i].w_in;
  return out;
}

std::vector<double> WeightSequence::out_weights() const {
  std::vector<double> out(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) out[i] = pairs_[i].w_out;
  return out;
}

WeightSequence WeightSequence::prefix(std::size_t n) const {
  if (n > pairs_.size()) throw std::out_of_range("prefix longer than sequence");
  return WeightSequence(std::vector<WeightPair>(pairs_.begin(), pairs_.begin() + n));
}

WeightSequence sample_weights(const WeightModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_weights: N must be >= 1");
  std::vector<WeightPair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, StreamTag::Weights, i);
    pairs[i] = model.draw(rng);
  }
  return WeightSequence(std::move(pairs));
}

std::string_view to_string(NormalizerMode mode) {
  switch (mode) {
    case NormalizerMode::DeterministicMuN: return "mu-n";
    case NormalizerMode::EmpiricalProduct: return "empirical-product";
    case NormalizerMode::CapacitySum: return "capacity-sum";
  }
  return "unknown";
}

NormalizerMode parse_normalizer_mode(std::string_view text) {
  if (text == "mu-n") return NormalizerMode::DeterministicMuN;
  if (text == "empirical-product") return NormalizerMode::EmpiricalProduct;
  if (text == "capacity-sum") return NormalizerMode::CapacitySum;
  throw std::invalid_argument("unknown normalizer mode '" + std::string(text) +
                              "' (expected mu-n, empirical-product or capacity-sum)");
}

double normalizer(const WeightSequence& w, double mu, NormalizerMode mode) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("normalizer: mu must be > 0");
  if (w.size() == 0) throw std::invalid_argument("normalizer: empty weight sequence");
  const double n = static_cast<double>(w.size());
  switch (mode) {
    case NormalizerMode::DeterministicMuN:
      return mu * n;
    case NormalizerMode::EmpiricalProduct:
      return w.sum_out() * w.sum_in() / (mu * n);
    case NormalizerMode::CapacitySum:
      if (!w.mirrored()) {
        throw std::invalid_argument("capacity-sum normalizer needs w_in == w_out at every vertex");
      }
      return w.sum_in();
  }
  throw std::invalid_argument("normalizer: unknown mode");
}

std::vector<WeightPair> stratified_sample(const WeightModel& model, std::size_t m, CounterRng& rng) {
  if (m == 0) throw std::invalid_argument("stratified_sample: m must be > 0");
  const double below_one = std::nextafter(1.0, 0.0);
  const double cell = 1.0 / static_cast<double>(m);
  auto points = [&](const MarginalLaw& law) {
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double u = std::min((static_cast<double>(i) + rng.uniform()) * cell, below_one);
      xs[i] = quantile(law, u);
    }
    return xs;
  };
  std::vector<WeightPair> out(m);
  const auto in = points(model.in_law());
  if (model.mirrored()) {
    for (std::size_t i = 0; i < m; ++i) out[i] = {in[i], in[i]};
    return out;
  }
  auto outw = points(model.out_law());
  for (std::size_t i = m - 1; i > 0; --i) std::swap(outw[i], outw[rng() % (i + 1)]);
  for (std::size_t i = 0; i < m; ++i) out[i] = {in[i], outw[i]};
  return out;
}

}  // namespace cpdigraph
