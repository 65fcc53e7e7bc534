#include <doctest.h>

#include <cmath>
#include <vector>

#include "cpdigraph/stats.hpp"

using namespace cpdigraph;

TEST_CASE("chi-square survival at known quantiles") {
  CHECK(chi_square_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-8));
  CHECK(chi_square_survival(23.209251158954356, 10) == doctest::Approx(0.01).epsilon(1e-8));
  CHECK(chi_square_survival(0.0, 4) == 1.0);
}

TEST_CASE("goodness of fit statistic by hand") {
  const std::vector<std::uint64_t> obs = {30, 50, 20};
  const std::vector<double> p = {0.25, 0.5, 0.25};
  const auto r = chi_square_gof(obs, p);
  // (30-25)^2/25 + 0 + (20-25)^2/25
  CHECK(r.statistic == doctest::Approx(2.0));
  CHECK(r.dof == 2);
  CHECK(r.p_value == doctest::Approx(std::exp(-1.0)));
  CHECK(r.passes(0.01));
}

TEST_CASE("small cells are pooled") {
  const std::vector<std::uint64_t> obs = {3, 4, 93};
  const std::vector<double> p = {0.03, 0.04, 0.93};
  const auto r = chi_square_gof(obs, p);
  CHECK(r.dof == 1);
  CHECK(r.statistic == doctest::Approx(0.0));
}

TEST_CASE("combine sums statistics and dof") {
  const std::vector<ChiSquareResult> parts = {{2.0, 2, 0.0}, {3.0, 3, 0.0}};
  const auto c = combine(parts);
  CHECK(c.statistic == 5.0);
  CHECK(c.dof == 5);
  CHECK(c.p_value == doctest::Approx(chi_square_survival(5.0, 5)));
}

TEST_CASE("poisson pmf and tail") {
  CHECK(poisson_pmf(0, 0.0) == 1.0);
  CHECK(poisson_pmf(3, 0.0) == 0.0);
  CHECK(poisson_pmf(3, 2.0) == doctest::Approx(8.0 / 6.0 * std::exp(-2.0)));
  CHECK(poisson_pmf(1000, 1000.0) ==
        doctest::Approx(std::exp(1000 * std::log(1000.0) - 1000 - std::lgamma(1001.0))));
  const auto p = poisson_probabilities_with_tail(1.0, 4);
  REQUIRE(p.size() == 4);
  CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0));
  CHECK(p[3] == doctest::Approx(1.0 - 2.5 * std::exp(-1.0)));
}

TEST_CASE("two-sample test and tv") {
  const Histogram a = {50, 30, 20};
  CHECK(chi_square_two_sample(a, a).statistic == doctest::Approx(0.0));
  const Histogram b = {20, 30, 50};
  CHECK(chi_square_two_sample(a, b).p_value < 1e-4);
  CHECK(histogram_tv(a, b) == doctest::Approx(0.3));
  CHECK(histogram_tv(a, a) == 0.0);
  const std::vector<double> pmf = {0.5, 0.3};
  CHECK(histogram_tv(a, pmf) == doctest::Approx(0.0));
  CHECK(total_count(a) == 100);
}

TEST_CASE("moments, fits and quantiles") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const auto m = sample_moments(xs);
  CHECK(m.mean == 2.5);
  CHECK(m.variance == doctest::Approx(5.0 / 3.0));
  const Histogram h = {0, 2, 2};
  CHECK(histogram_moments(h).mean == 1.5);
  const std::vector<double> y = {3.0, 5.0, 7.0, 9.0};
  const auto f = fit_line(xs, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(quantile(std::vector<double>{0.0, 10.0}, 0.25) == doctest::Approx(2.5));
}
