#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cpdigraph/alias_table.hpp"
#include "cpdigraph/random.hpp"
#include "cpdigraph/stats.hpp"

using namespace cpdigraph;

namespace {

// Poisson pmf by the product recursion, independent of the library's.
std::vector<double> poisson_oracle(double mean, std::size_t size) {
  std::vector<double> p(size);
  double term = std::exp(-mean);
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    p[k] = term;
    acc += term;
    term *= mean / static_cast<double>(k + 1);
  }
  p[size - 1] = std::max(0.0, 1.0 - acc);
  return p;
}

}  // namespace

TEST_CASE("counter rng is a pure function of key and counter") {
  CounterRng a(7, StreamTag::Weights, 3);
  CounterRng b(7, StreamTag::Weights, 3);
  CounterRng c(7, StreamTag::Weights, 4);
  CounterRng d(8, StreamTag::Weights, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
  }
  CHECK(a.draws() == 100);
}

TEST_CASE("uniform ranges") {
  CounterRng rng(1, StreamTag::Replicate, 0);
  double sum = 0.0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    const double v = rng.uniform_pos();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(v > 0.0);
    REQUIRE(v <= 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("poisson sampler matches the pmf on both branches") {
  for (double mean : {0.0, 0.3, 2.0, 9.5, 10.0, 37.0, 500.0}) {
    CAPTURE(mean);
    CounterRng rng(11, StreamTag::Replicate, static_cast<std::uint64_t>(mean * 10));
    Histogram h;
    double s = 0.0, s2 = 0.0;
    const int n = 100'000;
    for (int i = 0; i < n; ++i) {
      const auto k = sample_poisson(rng, mean);
      record(h, k);
      s += static_cast<double>(k);
      s2 += static_cast<double>(k) * static_cast<double>(k);
    }
    if (mean == 0.0) {
      CHECK(h.size() == 1);
      continue;
    }
    const double m = s / n;
    const double var = s2 / n - m * m;
    CHECK(std::abs(m - mean) < 5.0 * std::sqrt(mean / n));
    CHECK(var == doctest::Approx(mean).epsilon(0.03));
    const auto probs = poisson_oracle(mean, h.size() + 1);
    Histogram padded = h;
    padded.push_back(0);
    const auto r = chi_square_gof(padded, probs);
    CHECK(r.p_value > 1e-4);
  }
}

TEST_CASE("binomial sampler moments and edge cases") {
  CounterRng rng(3, StreamTag::Replicate, 0);
  CHECK(sample_binomial(rng, 0, 0.5) == 0);
  CHECK(sample_binomial(rng, 17, 0.0) == 0);
  CHECK(sample_binomial(rng, 17, 1.0) == 17);
  for (auto [trials, p] : {std::pair<std::uint64_t, double>{10, 0.3}, {1000, 0.97}, {100000, 0.5}}) {
    CAPTURE(trials);
    double s = 0.0, s2 = 0.0;
    const int n = 50'000;
    for (int i = 0; i < n; ++i) {
      const auto k = sample_binomial(rng, trials, p);
      REQUIRE(k <= trials);
      s += static_cast<double>(k);
      s2 += static_cast<double>(k) * static_cast<double>(k);
    }
    const double mean = static_cast<double>(trials) * p;
    const double var = mean * (1.0 - p);
    CHECK(std::abs(s / n - mean) < 5.0 * std::sqrt(var / n));
    CHECK(s2 / n - (s / n) * (s / n) == doctest::Approx(var).epsilon(0.05));
  }
}

TEST_CASE("alias table frequencies") {
  const std::vector<double> w = {1.0, 0.0, 3.0, 6.0};
  AliasTable table(w);
  CHECK(table.size() == 4);
  CounterRng rng(5, StreamTag::Replicate, 0);
  std::vector<std::uint64_t> counts(4, 0);
  const int n = 200'000;
  for (int i = 0; i < n; ++i) ++counts[table.sample(rng)];
  CHECK(counts[1] == 0);
  const std::vector<double> probs = {0.1, 0.0, 0.3, 0.6};
  for (std::size_t i : {0u, 2u, 3u}) {
    const double sd = std::sqrt(n * probs[i] * (1 - probs[i]));
    CHECK(std::abs(static_cast<double>(counts[i]) - n * probs[i]) < 5 * sd);
  }
}

TEST_CASE("alias table rejects bad weights") {
  CHECK_THROWS_AS(AliasTable(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{1.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(AliasTable(std::vector<double>{1.0, NAN}), std::invalid_argument);
}
