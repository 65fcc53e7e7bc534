#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpdigraph {

/// Counts indexed by value.
using Histogram = std::vector<std::uint64_t>;

inline void record(Histogram& h, std::uint64_t value) {
  if (value >= h.size()) h.resize(value + 1, 0);
  ++h[value];
}

std::uint64_t total_count(const Histogram& h);

/// Poisson(mean) pmf at k; mean = 0 is the point mass at 0.
double poisson_pmf(std::uint64_t k, double mean);

/// Probabilities for values 0..size-2 followed by the upper tail mass.
std::vector<double> poisson_probabilities_with_tail(double mean, std::size_t size);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;

  bool passes(double alpha) const noexcept { return p_value >= alpha; }
};

/// Goodness of fit of observed counts against cell probabilities (which
/// must sum to 1; the last cell typically holds the tail). Adjacent cells
/// are pooled left to right until each has expected count >= 5.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities);

/// Goodness of fit of a histogram against Poisson(mean), with an upper
/// tail cell.
ChiSquareResult chi_square_poisson(const Histogram& h, double mean);

/// Sum of independent chi-square statistics; the combined statistic is
/// chi-square with the summed degrees of freedom.
ChiSquareResult combine(std::span<const ChiSquareResult> parts);

/// Homogeneity test of two histograms (2 x K contingency table), pooling
/// cells until every pooled cell has combined count >= 10.
ChiSquareResult chi_square_two_sample(const Histogram& a, const Histogram& b);

double chi_square_survival(double statistic, std::size_t dof);

/// Total variation distance between the empirical laws of two histograms.
double histogram_tv(const Histogram& a, const Histogram& b);

/// Total variation distance between an empirical histogram and a pmf given
/// on 0..pmf.size()-1 (mass beyond that is treated as one tail cell).
double histogram_tv(const Histogram& a, std::span<const double> pmf);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  ///< unbiased
  std::size_t count = 0;
};

SampleMoments sample_moments(std::span<const double> xs);
SampleMoments histogram_moments(const Histogram& h);

/// Least-squares fit y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> xs);
/// Linear-interpolated empirical quantile, q in [0, 1].
double quantile(std::vector<double> xs, double q);

}  // namespace cpdigraph
