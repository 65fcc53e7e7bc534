#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "cpdigraph/weights.hpp"

using namespace cpdigraph;

namespace {

// E[X^p] for Pareto(tau, xmin) by numerical integration of the density.
double pareto_moment_oracle(double tau, double xmin, double p) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [=](double t) {
    const double x = xmin + t;
    return std::pow(x, p) * (tau - 1.0) * std::pow(xmin, tau - 1.0) * std::pow(x, -tau);
  };
  return integrator.integrate(f);
}

}  // namespace

TEST_CASE("law moments against quadrature") {
  for (auto [tau, xmin] : {std::pair{3.5, 1.0}, {2.5, 0.3}, {4.0, 2.0}}) {
    CAPTURE(tau);
    const ParetoLaw law{tau, xmin};
    CHECK(mean(law) == doctest::Approx(pareto_moment_oracle(tau, xmin, 1.0)).epsilon(1e-8));
    if (tau > 3.0) {
      CHECK(second_moment(law) ==
            doctest::Approx(pareto_moment_oracle(tau, xmin, 2.0)).epsilon(1e-8));
    } else {
      CHECK(std::isinf(second_moment(law)));
    }
  }
  CHECK(mean(ConstantLaw{2.0}) == 2.0);
  CHECK(second_moment(ConstantLaw{2.0}) == 4.0);
}

TEST_CASE("model moments") {
  const auto c = moments(WeightModel::constant(2.0));
  CHECK(c.mu == 2.0);
  CHECK(c.rho == 4.0);
  const auto p = moments(WeightModel::pareto_mirrored(3.5, 1.0));
  CHECK(p.mu == doctest::Approx(2.5 / 1.5));
  CHECK(p.rho == doctest::Approx(2.5 / 0.5));
  const auto ind = moments(WeightModel::independent(ParetoLaw{3.5, 1.0}, ParetoLaw{3.5, 1.0}));
  CHECK(ind.rho == doctest::Approx(p.mu * p.mu));
  CHECK(ind.nu_in == doctest::Approx(5.0));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(WeightModel::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::constant(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::constant(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::pareto_mirrored(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightModel::pareto_mirrored(3.0, 0.0), std::invalid_argument);
  // Unequal means are not a valid joint law.
  CHECK_THROWS_AS(WeightModel::independent(ConstantLaw{1.0}, ConstantLaw{2.0}),
                  std::invalid_argument);
  CHECK_NOTHROW(WeightModel::independent(ConstantLaw{1.5}, ParetoLaw{3.0, 0.75}));
  CHECK_THROWS_AS(WeightModel::critical_pareto_mirrored(3.0), std::invalid_argument);
  CHECK_THROWS_AS(WeightSequence({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(sample_weights(WeightModel::constant(1.0), 0, 1), std::invalid_argument);
}

TEST_CASE("critical tuning sets E[C^2]/E[C] to one") {
  for (double tau : {3.5, 4.0, 7.0}) {
    const auto m = moments(WeightModel::critical_pareto_mirrored(tau));
    CHECK(m.nu_in / m.mu == doctest::Approx(1.0));
  }
}

TEST_CASE("pareto draws follow the law") {
  const double tau = 3.5;
  const auto seq = sample_weights(WeightModel::pareto_mirrored(tau, 1.0), 100'000, 42);
  CHECK(seq.mirrored());
  std::vector<double> xs = seq.in_weights();
  std::sort(xs.begin(), xs.end());
  // Kolmogorov-Smirnov distance against the exact cdf.
  double d = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = 1.0 - std::pow(xs[i], -(tau - 1.0));
    d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  CHECK(d < 1.63 / std::sqrt(n));  // 1% critical value
  CHECK(xs.front() >= 1.0);
}

TEST_CASE("independent draws differ in and out") {
  const auto seq =
      sample_weights(WeightModel::independent(ParetoLaw{3.0, 1.0}, ParetoLaw{3.0, 1.0}), 100, 1);
  CHECK_FALSE(seq.mirrored());
}

TEST_CASE("weight sequences are prefix-stable") {
  const auto model = WeightModel::pareto_mirrored(2.5, 1.0);
  const auto small = sample_weights(model, 50, 9);
  const auto large = sample_weights(model, 500, 9);
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(small[i] == large[i]);
  const auto pre = large.prefix(50);
  CHECK(pre.sum_in() == doctest::Approx(small.sum_in()));
  CHECK_THROWS_AS(small.prefix(51), std::out_of_range);
  CHECK(sample_weights(model, 50, 10)[0] != small[0]);
}

TEST_CASE("normalizer modes") {
  const WeightSequence w({{1.0, 2.0}, {3.0, 4.0}});
  const double mu = 2.5;
  CHECK(normalizer(w, mu, NormalizerMode::DeterministicMuN) == doctest::Approx(5.0));
  CHECK(normalizer(w, mu, NormalizerMode::EmpiricalProduct) == doctest::Approx(4.0 * 6.0 / 5.0));
  CHECK_THROWS_AS(normalizer(w, mu, NormalizerMode::CapacitySum), std::invalid_argument);
  const WeightSequence c({{1.0, 1.0}, {3.0, 3.0}});
  CHECK(normalizer(c, 2.0, NormalizerMode::CapacitySum) == 4.0);
  CHECK(normalizer(c, 2.0, NormalizerMode::EmpiricalProduct) == doctest::Approx(4.0));
  CHECK_THROWS_AS(normalizer(c, 0.0, NormalizerMode::DeterministicMuN), std::invalid_argument);
  CHECK(parse_normalizer_mode("mu-n") == NormalizerMode::DeterministicMuN);
  CHECK(to_string(parse_normalizer_mode("capacity-sum")) == "capacity-sum");
  CHECK_THROWS_AS(parse_normalizer_mode("sum"), std::invalid_argument);
}

TEST_CASE("normalizers agree with mu N asymptotically") {
  const auto model = WeightModel::pareto_mirrored(3.5, 1.0);
  const auto w = sample_weights(model, 200'000, 3);
  const double mu = moments(model).mu;
  const double base = normalizer(w, mu, NormalizerMode::DeterministicMuN);
  CHECK(normalizer(w, mu, NormalizerMode::EmpiricalProduct) / base == doctest::Approx(1.0).epsilon(0.02));
  CHECK(normalizer(w, mu, NormalizerMode::CapacitySum) / base == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("stratified sample covers every cell") {
  const auto model = WeightModel::pareto_mirrored(3.5, 1.0);
  CounterRng rng(1, StreamTag::Quadrature, 0);
  const std::size_t m = 1000;
  const auto pts = stratified_sample(model, m, rng);
  REQUIRE(pts.size() == m);
  for (std::size_t i = 0; i < m; ++i) {
    const double u = 1.0 - std::pow(pts[i].w_in, -2.5);
    CHECK(u >= static_cast<double>(i) / m - 1e-12);
    CHECK(u <= static_cast<double>(i + 1) / m + 1e-12);
    CHECK(pts[i].w_in == pts[i].w_out);
  }
  CHECK_THROWS_AS(stratified_sample(model, 0, rng), std::invalid_argument);
}

TEST_CASE("stratified independent sample pairs each cell once") {
  const auto model = WeightModel::independent(ParetoLaw{3.0, 1.0}, ParetoLaw{4.0, 4.0 / 3.0});
  CounterRng rng(2, StreamTag::Quadrature, 0);
  const std::size_t m = 500;
  const auto pts = stratified_sample(model, m, rng);
  std::vector<int> seen(m, 0);
  for (const auto& p : pts) {
    const double u = 1.0 - std::pow(p.w_out / (4.0 / 3.0), -3.0);
    ++seen[std::min<std::size_t>(m - 1, static_cast<std::size_t>(u * m))];
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
  // The stratified mean is far closer to the law's mean than m i.i.d. draws.
  double s = 0.0;
  for (const auto& p : pts) s += p.w_in;
  CHECK(s / m == doctest::Approx(2.0).epsilon(0.05));
}
