#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/sampler.hpp"
#include "cpdigraph/stats.hpp"

using namespace cpdigraph;

namespace {

double log_pmf(std::uint64_t k, double m) {
  if (m == 0.0) return k == 0 ? 0.0 : -INFINITY;
  return static_cast<double>(k) * std::log(m) - m - std::lgamma(k + 1.0);
}

// Half the l1 distance by direct summation far past both means.
double tv_series(double u, double lambda) {
  const auto kmax = static_cast<std::uint64_t>(std::max(u, lambda) + 40.0 * std::sqrt(std::max(u, lambda)) + 60.0);
  double s = 0.0;
  for (std::uint64_t k = 0; k <= kmax; ++k) s += std::abs(std::exp(log_pmf(k, u)) - std::exp(log_pmf(k, lambda)));
  return 0.5 * s;
}

// P(D >= k) for D mixed Poisson over Pareto(tau, 1), by quadrature.
double mixed_tail_oracle(double tau, unsigned k) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [=](double t) {
    const double w = 1.0 + t;
    return boost::math::gamma_p(static_cast<double>(k), w) * (tau - 1.0) * std::pow(w, -tau);
  };
  return integrator.integrate(f);
}

std::uint64_t seed_for(std::uint64_t base, std::size_t r) {
  return CounterRng::derive_key(base, static_cast<std::uint64_t>(StreamTag::Replicate), r);
}

}  // namespace

TEST_CASE("poisson_tv closed forms and series") {
  CHECK(poisson_tv(0.0, 0.0) == 0.0);
  CHECK(poisson_tv(3.0, 3.0) == 0.0);
  CHECK(poisson_tv(0.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
  for (auto [u, l] : {std::pair{0.5, 0.6}, {1.0, 2.0}, {10.0, 10.5}, {200.0, 230.0}, {1e-4, 3e-4}, {40.0, 0.1}}) {
    CAPTURE(u);
    CAPTURE(l);
    CHECK(std::abs(poisson_tv(u, l) - tv_series(u, l)) < 1e-10);
    CHECK(poisson_tv(u, l) == poisson_tv(l, u));
  }
  CHECK(poisson_tv(1e4, 1e6) == doctest::Approx(1.0));
  CHECK_THROWS_AS(poisson_tv(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(poisson_tv(1.0, NAN), std::invalid_argument);
}

TEST_CASE("mixed pmf is exact for constant weights") {
  const auto pmf = mixed_poisson_pmf(WeightModel::constant(2.0), 15, 10, 1);
  for (std::size_t j = 0; j <= 15; ++j) {
    for (std::size_t k = 0; k <= 15; ++k) {
      CHECK(pmf.at(j, k) == doctest::Approx(std::exp(log_pmf(j, 2.0) + log_pmf(k, 2.0))).epsilon(1e-12));
    }
  }
  double total = pmf.tail;
  for (double m : pmf.mass) total += m;
  CHECK(total == doctest::Approx(1.0));
  const auto in = pmf.marginal_in();
  CHECK(in[3] == doctest::Approx(std::exp(log_pmf(3, 2.0))));
  CHECK_THROWS_AS(mixed_poisson_pmf(WeightModel::pareto_mirrored(3.5, 1.0), 10, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("pareto mixed-Poisson tail slope against quadrature") {
  const double tau = 3.5;
  std::vector<double> lx, ly;
  for (unsigned k = 10; k <= 100; ++k) {
    lx.push_back(std::log(static_cast<double>(k)));
    ly.push_back(std::log(mixed_tail_oracle(tau, k)));
  }
  const double oracle = fit_line(lx, ly).slope;
  const auto pmf = mixed_poisson_pmf(WeightModel::pareto_mirrored(tau, 1.0), 200, 1'000'000, 7);
  const double slope = tail_slope(pmf, 10, 100);
  CHECK(std::abs(slope - oracle) < 0.01);
  CHECK(std::abs(slope + (tau - 1.0)) < 0.3);
  CHECK_THROWS_AS(tail_slope(pmf, 0, 100), std::invalid_argument);
  CHECK_THROWS_AS(tail_slope(pmf, 50, 300), std::invalid_argument);
}

TEST_CASE("degree fit: pass, mismatch and underpowered") {
  const auto model = WeightModel::constant(2.0);
  const auto w = sample_weights(model, 100'000, 1);
  const auto g = sample_graph_fast(w, 200'000.0, 2);
  const auto ok = degree_fit_test(g, model, 20, 3);
  CHECK(ok.pass);
  CHECK_FALSE(ok.underpowered);
  CHECK(ok.tv < 0.01);
  const auto wrong = degree_fit_test(g, WeightModel::constant(1.0), 20, 3);
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.tv > 0.1);
  const auto small = sample_graph_fast(w.prefix(50), 100.0, 2);
  const auto weak = degree_fit_test(small, model, 20, 3);
  CHECK(weak.underpowered);
  CHECK(weak.noise_floor > 0.01);
}

TEST_CASE("conditional degree parameters") {
  const WeightSequence w({{1.0, 2.0}, {3.0, 0.5}, {0.5, 1.5}});
  const double L = 4.0;
  const auto c = conditional_degree_params(w, L, 1);
  CHECK(c.lambda_in == doctest::Approx(3.0 * (2.0 + 1.5) / L));
  CHECK(c.lambda_out == doctest::Approx(0.5 * (1.0 + 0.5) / L));
  CHECK(c.lambda_total == doctest::Approx(c.lambda_in + c.lambda_out + 1.5 / L));
  CHECK_THROWS_AS(conditional_degree_params(w, L, 3), std::out_of_range);
  CHECK_THROWS_AS(conditional_degree_params(w, 0.0, 0), std::invalid_argument);
}

TEST_CASE("conditional degree laws under resampling") {
  const WeightSequence w({{1.0, 2.0}, {3.0, 0.5}, {0.5, 1.5}, {2.0, 2.5}});
  const double L = 5.0;
  const auto c = conditional_degree_params(w, L, 1);
  Histogram din, dout, total;
  for (std::size_t r = 0; r < 30'000; ++r) {
    const auto d = degrees(sample_graph_fast(w, L, seed_for(60, r)))[1];
    record(din, d.d_in);
    record(dout, d.d_out);
    record(total, d.total);
  }
  CHECK(chi_square_poisson(din, c.lambda_in).p_value > 1e-3);
  CHECK(chi_square_poisson(dout, c.lambda_out).p_value > 1e-3);
  CHECK(chi_square_poisson(total, c.lambda_total).p_value > 1e-3);
}

TEST_CASE("independence statistic") {
  const auto model = WeightModel::constant(1.0);
  const auto one = independence_test(model, 100, 1, 10, 1);
  CHECK(one.statistic == 0.0);
  CHECK_THROWS_AS(independence_test(model, 10, 0, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(independence_test(model, 10, 11, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(independence_test(model, 10, 2, 0, 1), std::invalid_argument);
  // Incident-arc resampling has the same law as whole-graph resampling.
  IndependenceOptions full;
  full.full_graph = true;
  const auto fast = independence_test(model, 3, 2, 200'000, 5);
  const auto slow = independence_test(model, 3, 2, 200'000, 6, full);
  CHECK(fast.statistic > 0.02);
  CHECK(std::abs(fast.statistic - slow.statistic) < 0.01);
  CHECK(fast.reps == 200'000);
  CHECK_FALSE(fast.first.empty());
}

TEST_CASE("loop law") {
  const auto r = loop_test(WeightModel::constant(1.0), 10, 5000, 3);
  CHECK(r.expected_mean == 1.0);
  CHECK(r.pass);
  CHECK(std::abs(r.z_score) < 4.0);
  const auto m = loop_test(WeightModel::pareto_mirrored(3.5, 1.0), 200, 5000, 4);
  CHECK(m.expected_mean == doctest::Approx(5.0 / (2.5 / 1.5)));
  CHECK_THROWS_AS(loop_test(WeightModel::pareto_mirrored(2.5, 1.0), 10, 10, 1), std::domain_error);
  CHECK_THROWS_AS(loop_test(WeightModel::constant(1.0), 10, 0, 1), std::invalid_argument);
}
