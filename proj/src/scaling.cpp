#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/parallel.hpp"
#include "cpdigraph/random.hpp"
#include "cpdigraph/sampler.hpp"
#include "cpdigraph/stats.hpp"

namespace cpdigraph {

double critical_cluster_exponent(double tau) {
  if (std::isinf(tau)) return 2.0 / 3.0;
  if (!(tau > 3.0)) throw std::invalid_argument("critical cluster exponent needs tau > 3");
  return std::min((tau - 2.0) / (tau - 1.0), 2.0 / 3.0);
}

namespace {

double log_median_slope(std::span<const std::size_t> n_list,
                        const std::vector<std::vector<double>>& samples) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    x.push_back(std::log(static_cast<double>(n_list[i])));
    y.push_back(std::log(median(samples[i])));
  }
  return fit_line(x, y).slope;
}

SlopeEstimate bootstrap_slope(std::span<const std::size_t> n_list,
                              const std::vector<std::vector<double>>& samples,
                              std::size_t bootstrap, std::uint64_t seed, std::uint64_t stream) {
  SlopeEstimate est;
  est.slope = log_median_slope(n_list, samples);
  if (bootstrap == 0) {
    est.ci_low = est.ci_high = est.slope;
    return est;
  }
  std::vector<double> slopes(bootstrap);
  for (std::size_t b = 0; b < bootstrap; ++b) {
    CounterRng rng(seed, StreamTag::Bootstrap, stream * bootstrap + b);
    std::vector<std::vector<double>> resampled(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      resampled[i].resize(s.size());
      for (auto& v : resampled[i]) v = s[rng() % s.size()];
    }
    slopes[b] = log_median_slope(n_list, resampled);
  }
  est.ci_low = quantile(slopes, 0.025);
  est.ci_high = quantile(slopes, 0.975);
  return est;
}

}  // namespace

ScalingResult scaling_exponent_experiment(const WeightModel& model,
                                          std::span<const std::size_t> n_list, std::size_t reps,
                                          std::uint64_t seed, std::size_t bootstrap) {
  if (!model.mirrored()) throw std::invalid_argument("scaling experiment needs a mirrored model");
  const Moments m = moments(model);
  const double ratio = m.nu_in / m.mu;
  if (!(std::fabs(ratio - 1.0) <= 1e-9)) {
    throw std::invalid_argument("scaling experiment needs a critical model (nu/mu = 1), got " +
                                std::to_string(ratio));
  }
  if (n_list.size() < 2 || reps == 0) {
    throw std::invalid_argument("scaling experiment needs >= 2 sizes and reps > 0");
  }

  ScalingResult result;
  if (const auto* p = std::get_if<ParetoLaw>(&model.in_law())) result.tau = p->tau;
  result.alpha = critical_cluster_exponent(result.tau);

  std::vector<std::vector<double>> weak(n_list.size());
  std::vector<std::vector<double>> forward(n_list.size());
  std::vector<std::vector<double>> strong(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const std::size_t n = n_list[i];
    weak[i].assign(reps, 0.0);
    forward[i].assign(reps, 0.0);
    strong[i].assign(reps, 0.0);
    parallel_for(reps, [&](std::size_t r) {
      const std::uint64_t s = CounterRng::derive_key(
          seed, static_cast<std::uint64_t>(StreamTag::Replicate), (std::uint64_t{i} << 32) | r);
      const auto g = sample_oriented_sum(sample_weights(model, n, s), s);
      weak[i][r] = static_cast<double>(weak_components(g).largest());
      strong[i][r] = static_cast<double>(strong_components(g).largest());
      forward[i][r] = static_cast<double>(largest_forward_cluster(g));
    });

    ScalingPoint pt;
    pt.n = n;
    pt.weak = weak[i];
    pt.forward = forward[i];
    pt.strong = strong[i];
    pt.median_weak = median(weak[i]);
    pt.median_forward = median(forward[i]);
    pt.median_strong = median(strong[i]);
    pt.mean_weak = sample_moments(weak[i]).mean;
    pt.mean_forward = sample_moments(forward[i]).mean;
    pt.mean_strong = sample_moments(strong[i]).mean;
    result.points.push_back(std::move(pt));
  }

  result.weak = bootstrap_slope(n_list, weak, bootstrap, seed, 0);
  result.forward = bootstrap_slope(n_list, forward, bootstrap, seed, 1);
  result.strong = bootstrap_slope(n_list, strong, bootstrap, seed, 2);
  return result;
}

}  // namespace cpdigraph
