#include "cpdigraph/random.hpp"

#include <cmath>
#include <stdexcept>

namespace cpdigraph {

namespace {

std::uint64_t poisson_inversion(CounterRng& rng, double mean) {
  // Sequential search from zero; mean < 10 keeps the loop short and
  // exp(-mean) well away from underflow.
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    const double next = cdf + p;
    if (next == cdf) break;  // numerical tail exhausted
    cdf = next;
  }
  return k;
}

std::uint64_t poisson_ptrs(CounterRng& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace

std::uint64_t sample_poisson(CounterRng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("sample_poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(rng, mean);
  return poisson_ptrs(rng, mean);
}

std::uint64_t sample_binomial(CounterRng& rng, std::uint64_t trials, double p) {
  if (p >= 1.0) return trials;
  if (p <= 0.0) return 0;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    if (rng.uniform() < p) ++hits;
  }
  return hits;
}

}  // namespace cpdigraph
