#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/parallel.hpp"
#include "cpdigraph/random.hpp"
#include "cpdigraph/sampler.hpp"
#include "cpdigraph/stats.hpp"

namespace cpdigraph {

namespace {

constexpr double kTailBound = 1e-15;

// Chernoff: P(X >= k) <= exp(-m + k (1 + log(m / k))) for k > m, and the same
// expression bounds P(X <= k) for k < m.
double chernoff_log_bound(double k, double m) { return -m + k * (1.0 + std::log(m / k)); }

/// Index window [lo, hi] holding all but ~1e-20 of Poisson(mean), clipped to kmax.
std::pair<std::size_t, std::size_t> poisson_window(double mean, std::size_t kmax) {
  const double spread = 12.0 * std::sqrt(mean) + 12.0;
  const double lo = std::max(0.0, std::floor(mean - spread));
  const double hi = std::ceil(mean + spread);
  return {static_cast<std::size_t>(lo),
          static_cast<std::size_t>(std::min(hi, static_cast<double>(kmax)))};
}

}  // namespace

double poisson_tv(double u, double lambda) {
  if (!(u >= 0.0) || !(lambda >= 0.0) || !std::isfinite(u) || !std::isfinite(lambda)) {
    throw std::invalid_argument("poisson_tv: arguments must be finite and >= 0");
  }
  if (u == lambda) return 0.0;
  const double small = std::min(u, lambda);
  const double large = std::max(u, lambda);
  // Point mass at 0 against Poisson(large): the distance is P(X > 0).
  if (small == 0.0) return -std::expm1(-large);

  const double log_eps = std::log(kTailBound);
  double hi = std::ceil(large) + 1.0;
  while (chernoff_log_bound(hi, large) > log_eps) hi += 1.0;
  double lo = std::floor(small) - 1.0;
  while (lo > 0.0 && chernoff_log_bound(lo, small) > log_eps) lo -= 1.0;
  if (lo < 0.0) lo = 0.0;

  // Omitted tails are below 1e-15 for both laws.
  double sum = 0.0;
  for (auto j = static_cast<std::uint64_t>(lo); j <= static_cast<std::uint64_t>(hi); ++j) {
    sum += std::fabs(poisson_pmf(j, small) - poisson_pmf(j, large));
  }
  return std::min(1.0, 0.5 * sum);
}

std::vector<double> BivariatePmf::marginal_in() const {
  std::vector<double> m(kmax + 1, 0.0);
  for (std::size_t j = 0; j <= kmax; ++j) {
    for (std::size_t k = 0; k <= kmax; ++k) m[j] += at(j, k);
  }
  return m;
}

std::vector<double> BivariatePmf::marginal_out() const {
  std::vector<double> m(kmax + 1, 0.0);
  for (std::size_t j = 0; j <= kmax; ++j) {
    for (std::size_t k = 0; k <= kmax; ++k) m[k] += at(j, k);
  }
  return m;
}

namespace {

struct MixedPoissonAccumulator {
  explicit MixedPoissonAccumulator(std::size_t kmax)
      : kmax(kmax), joint((kmax + 1) * (kmax + 1), 0.0), p_in(kmax + 1, 0.0),
        p_out(kmax + 1, 0.0) {}

  void add(const WeightPair& w, double weight) {
    const auto [in_lo, in_hi] = poisson_window(w.w_in, kmax);
    const auto [out_lo, out_hi] = poisson_window(w.w_out, kmax);
    if (in_lo > kmax || out_lo > kmax) return;  // all mass beyond the square
    for (std::size_t j = in_lo; j <= in_hi; ++j) p_in[j] = poisson_pmf(j, w.w_in) * weight;
    for (std::size_t k = out_lo; k <= out_hi; ++k) p_out[k] = poisson_pmf(k, w.w_out);
    for (std::size_t j = in_lo; j <= in_hi; ++j) {
      double* row = &joint[j * (kmax + 1)];
      for (std::size_t k = out_lo; k <= out_hi; ++k) row[k] += p_in[j] * p_out[k];
    }
  }

  std::size_t kmax;
  std::vector<double> joint;
  std::vector<double> p_in;
  std::vector<double> p_out;
};

}  // namespace

BivariatePmf mixed_poisson_pmf(const WeightModel& model, std::size_t kmax, std::size_t mc_samples,
                               std::uint64_t seed) {
  MixedPoissonAccumulator acc(kmax);
  CounterRng rng(seed, StreamTag::Quadrature, 0);
  if (model.degenerate()) {
    acc.add(model.draw(rng), 1.0);
  } else {
    if (mc_samples == 0) throw std::invalid_argument("mixed_poisson_pmf: mc_samples must be > 0");
    const double weight = 1.0 / static_cast<double>(mc_samples);
    for (const WeightPair& w : stratified_sample(model, mc_samples, rng)) acc.add(w, weight);
  }
  BivariatePmf pmf;
  pmf.kmax = kmax;
  pmf.mass = std::move(acc.joint);
  double total = 0.0;
  for (double m : pmf.mass) total += m;
  pmf.tail = std::max(0.0, 1.0 - total);
  return pmf;
}

double tail_slope(const BivariatePmf& pmf, std::size_t k_lo, std::size_t k_hi) {
  if (k_lo == 0 || k_hi <= k_lo || k_hi > pmf.kmax) {
    throw std::invalid_argument("tail_slope: need 0 < k_lo < k_hi <= kmax");
  }
  // Row sums omit (j, k > kmax); negligible when kmax is well past k_hi.
  const auto marginal = pmf.marginal_in();
  std::vector<double> x;
  std::vector<double> y;
  double below = 0.0;
  for (std::size_t k = 0; k <= k_hi; ++k) {
    if (k >= k_lo) {
      const double ccdf = 1.0 - below;
      if (ccdf <= 0.0) throw std::domain_error("tail_slope: empty tail");
      x.push_back(std::log(static_cast<double>(k)));
      y.push_back(std::log(ccdf));
    }
    below += marginal[k];
  }
  return fit_line(x, y).slope;
}

DegreeFitResult degree_fit_test(const MultiDigraph& g, const WeightModel& model, std::size_t kmax,
                                std::uint64_t seed, double threshold, std::size_t mc_samples) {
  if (g.n() == 0) throw std::invalid_argument("degree_fit_test: empty graph");
  const BivariatePmf pmf = mixed_poisson_pmf(model, kmax, mc_samples, seed);
  const std::size_t side = kmax + 1;
  std::vector<std::uint64_t> counts(side * side, 0);
  std::uint64_t outside = 0;
  for (const DegreeVector& d : degrees(g)) {
    if (d.d_in <= kmax && d.d_out <= kmax) {
      ++counts[d.d_in * side + d.d_out];
    } else {
      ++outside;
    }
  }

  DegreeFitResult r;
  r.n = g.n();
  r.threshold = threshold;
  const double n = static_cast<double>(g.n());
  double sum = 0.0;
  double floor_sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    sum += std::fabs(static_cast<double>(counts[i]) / n - pmf.mass[i]);
    floor_sum += std::sqrt(pmf.mass[i] * (1.0 - pmf.mass[i]));
  }
  sum += std::fabs(static_cast<double>(outside) / n - pmf.tail);
  floor_sum += std::sqrt(pmf.tail * (1.0 - pmf.tail));
  r.tv = 0.5 * sum;
  // E|p_hat - p| ~ sqrt(2 p (1 - p) / (pi n)) per cell.
  r.noise_floor = floor_sum / std::sqrt(2.0 * M_PI * n);
  r.underpowered = r.noise_floor >= threshold;
  r.pass = r.tv < threshold;
  return r;
}

ConditionalDegreeParams conditional_degree_params(const WeightSequence& w, double normalizer,
                                                  std::size_t v) {
  if (v >= w.size()) throw std::out_of_range("conditional_degree_params: vertex out of range");
  if (!(normalizer > 0.0)) throw std::invalid_argument("normalizer must be > 0");
  const WeightPair& p = w[v];
  ConditionalDegreeParams c;
  c.lambda_in = p.w_in * (w.sum_out() - p.w_out) / normalizer;
  c.lambda_out = p.w_out * (w.sum_in() - p.w_in) / normalizer;
  c.lambda_total = c.lambda_in + c.lambda_out + p.w_in * p.w_out / normalizer;
  return c;
}

DependenceResult independence_test(const WeightModel& model, std::size_t n, std::size_t k,
                                   std::size_t reps, std::uint64_t seed,
                                   const IndependenceOptions& options) {
  if (k == 0 || k > n) throw std::invalid_argument("independence_test: need 1 <= k <= N");
  if (reps == 0) throw std::invalid_argument("independence_test: reps must be > 0");
  DependenceResult result;
  result.n = n;
  result.reps = reps;
  if (k == 1) return result;

  const WeightSequence w = sample_weights(model, n, seed);
  const double L = normalizer(w, moments(model).mu, options.mode);

  double rest_in = w.sum_in();
  double rest_out = w.sum_out();
  double largest = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    rest_in -= w[i].w_in;
    rest_out -= w[i].w_out;
    const auto c = conditional_degree_params(w, L, i);
    largest = std::max({largest, c.lambda_in, c.lambda_out});
  }
  const auto cap = static_cast<std::size_t>(std::ceil(largest + 8.0 * std::sqrt(largest) + 8.0));

  // components[2i] = d_in of tracked vertex i, components[2i+1] = d_out.
  const std::size_t comps = 2 * k;
  std::vector<std::uint16_t> values(reps * comps, 0);
  parallel_for(reps, [&](std::size_t r) {
    std::vector<std::uint64_t> d(comps, 0);
    if (options.full_graph) {
      const auto g = sample_graph_fast(w, L, CounterRng::derive_key(seed, static_cast<std::uint64_t>(StreamTag::Replicate), r));
      const auto deg = degrees(g);
      for (std::size_t i = 0; i < k; ++i) {
        d[2 * i] = deg[i].d_in;
        d[2 * i + 1] = deg[i].d_out;
      }
    } else {
      // Arcs with at most one tracked endpoint aggregate into one Poisson
      // count per component; arcs between tracked vertices are drawn
      // individually because they are what couples the components.
      CounterRng rng(seed, StreamTag::Replicate, r);
      for (std::size_t i = 0; i < k; ++i) {
        d[2 * i] = sample_poisson(rng, w[i].w_in * rest_out / L);
        d[2 * i + 1] = sample_poisson(rng, w[i].w_out * rest_in / L);
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          const std::uint64_t e = sample_poisson(rng, w[i].w_out * w[j].w_in / L);
          d[2 * i + 1] += e;
          d[2 * j] += e;
        }
      }
    }
    for (std::size_t c = 0; c < comps; ++c) {
      values[r * comps + c] = static_cast<std::uint16_t>(std::min<std::uint64_t>(d[c], cap));
    }
  });

  const std::size_t side = cap + 1;
  const double total = static_cast<double>(reps);
  auto label = [](std::size_t c) {
    return std::string(c % 2 == 0 ? "d_in[" : "d_out[") + std::to_string(c / 2) + "]";
  };
  std::vector<double> joint(side * side);
  std::vector<double> ma(side);
  std::vector<double> mb(side);
  for (std::size_t a = 0; a < comps; ++a) {
    for (std::size_t b = a + 1; b < comps; ++b) {
      if (a / 2 == b / 2) continue;  // same vertex
      std::fill(joint.begin(), joint.end(), 0.0);
      std::fill(ma.begin(), ma.end(), 0.0);
      std::fill(mb.begin(), mb.end(), 0.0);
      for (std::size_t r = 0; r < reps; ++r) {
        const auto x = values[r * comps + a];
        const auto y = values[r * comps + b];
        joint[x * side + y] += 1.0;
        ma[x] += 1.0;
        mb[y] += 1.0;
      }
      double sum = 0.0;
      for (std::size_t x = 0; x < side; ++x) {
        for (std::size_t y = 0; y < side; ++y) {
          sum += std::fabs(joint[x * side + y] / total - (ma[x] / total) * (mb[y] / total));
        }
      }
      const double tv = 0.5 * sum;
      if (tv > result.statistic || result.first.empty()) {
        result.statistic = tv;
        result.first = label(a);
        result.second = label(b);
      }
    }
  }
  return result;
}

LoopTestResult loop_test(const WeightModel& model, std::size_t n, std::size_t reps,
                         std::uint64_t seed, NormalizerMode mode) {
  const Moments m = moments(model);
  if (!std::isfinite(m.rho)) {
    throw std::domain_error(
        "loop count limit requires rho = E[w_in w_out] < infinity; this model has rho = inf");
  }
  if (reps == 0) throw std::invalid_argument("loop_test: reps must be > 0");

  std::vector<std::uint64_t> loops(reps, 0);
  parallel_for(reps, [&](std::size_t r) {
    const std::uint64_t s = CounterRng::derive_key(seed, static_cast<std::uint64_t>(StreamTag::Replicate), r);
    const WeightSequence w = sample_weights(model, n, s);
    const double L = normalizer(w, m.mu, mode);
    loops[r] = sample_graph_fast(w, L, s).total_loops();
  });

  LoopTestResult res;
  res.expected_mean = m.rho / m.mu;
  Histogram h;
  for (auto l : loops) record(h, l);
  const auto mom = histogram_moments(h);
  res.mean = mom.mean;
  res.variance = mom.variance;
  res.z_score = (res.mean - res.expected_mean) /
                std::sqrt(res.expected_mean / static_cast<double>(reps));
  const auto chi = chi_square_poisson(h, res.expected_mean);
  res.chi_square = chi.statistic;
  res.dof = chi.dof;
  res.p_value = chi.p_value;
  res.pass = chi.passes(0.01);
  res.histogram = std::move(h);
  return res;
}

}  // namespace cpdigraph
