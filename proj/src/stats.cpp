#include "cpdigraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace cpdigraph {

std::uint64_t total_count(const Histogram& h) {
  return std::accumulate(h.begin(), h.end(), std::uint64_t{0});
}

namespace {

// Loader's saddle-point pieces: stirlerr(n) = log(n!) - log(sqrt(2 pi n) (n/e)^n)
// and bd0(x, np) = x log(x / np) + np - x, both without cancellation.
double stirlerr(double n) {
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  constexpr double ln_sqrt_2pi = 0.918938533204672741780329736406;
  if (n <= 15.0) return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - ln_sqrt_2pi;
  const double nn = n * n;
  if (n > 500.0) return (s0 - s1 / nn) / n;
  if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v2;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
    return s;
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace

double poisson_pmf(std::uint64_t k, double mean) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  if (k == 0) return std::exp(-mean);
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double x = static_cast<double>(k);
  return std::exp(-stirlerr(x) - bd0(x, mean)) / std::sqrt(two_pi * x);
}

std::vector<double> poisson_probabilities_with_tail(double mean, std::size_t size) {
  if (size == 0) throw std::invalid_argument("need at least one cell");
  std::vector<double> p(size, 0.0);
  double head = 0.0;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    p[k] = poisson_pmf(k, mean);
    head += p[k];
  }
  p[size - 1] = std::max(0.0, 1.0 - head);
  return p;
}

double chi_square_survival(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  const boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities) {
  if (observed.size() != probabilities.size()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  const double n = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  if (n == 0.0) throw std::invalid_argument("chi_square_gof: no observations");

  std::vector<double> obs;
  std::vector<double> exp;
  double o_acc = 0.0;
  double e_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    o_acc += static_cast<double>(observed[i]);
    e_acc += probabilities[i] * n;
    if (e_acc >= 5.0) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (o_acc > 0.0 || e_acc > 0.0) {
    if (exp.empty()) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
    } else {
      obs.back() += o_acc;
      exp.back() += e_acc;
    }
  }

  ChiSquareResult r;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (exp[i] <= 0.0) {
      if (obs[i] > 0.0) r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    const double d = obs[i] - exp[i];
    r.statistic += d * d / exp[i];
  }
  r.dof = obs.size() > 1 ? obs.size() - 1 : 0;
  r.p_value = std::isinf(r.statistic) ? 0.0 : chi_square_survival(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_poisson(const Histogram& h, double mean) {
  // Enough cells to cover the bulk; one extra cell for the upper tail.
  std::size_t cells = h.size() + 1;
  cells = std::max<std::size_t>(cells, static_cast<std::size_t>(mean + 10.0 * std::sqrt(mean) + 5));
  Histogram padded = h;
  padded.resize(cells, 0);
  return chi_square_gof(padded, poisson_probabilities_with_tail(mean, cells));
}

ChiSquareResult combine(std::span<const ChiSquareResult> parts) {
  ChiSquareResult r;
  for (const auto& p : parts) {
    r.statistic += p.statistic;
    r.dof += p.dof;
  }
  r.p_value = std::isinf(r.statistic) ? 0.0 : chi_square_survival(r.statistic, r.dof);
  return r;
}

ChiSquareResult chi_square_two_sample(const Histogram& a, const Histogram& b) {
  const std::size_t k = std::max(a.size(), b.size());
  const double na = static_cast<double>(total_count(a));
  const double nb = static_cast<double>(total_count(b));
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi_square_two_sample: empty sample");

  std::vector<double> ca;
  std::vector<double> cb;
  double acc_a = 0.0;
  double acc_b = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    acc_a += i < a.size() ? static_cast<double>(a[i]) : 0.0;
    acc_b += i < b.size() ? static_cast<double>(b[i]) : 0.0;
    if (acc_a + acc_b >= 10.0) {
      ca.push_back(acc_a);
      cb.push_back(acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a + acc_b > 0.0) {
    if (ca.empty()) {
      ca.push_back(acc_a);
      cb.push_back(acc_b);
    } else {
      ca.back() += acc_a;
      cb.back() += acc_b;
    }
  }

  ChiSquareResult r;
  const double n = na + nb;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double col = ca[i] + cb[i];
    const double ea = col * na / n;
    const double eb = col * nb / n;
    r.statistic += (ca[i] - ea) * (ca[i] - ea) / ea + (cb[i] - eb) * (cb[i] - eb) / eb;
  }
  r.dof = ca.size() > 1 ? ca.size() - 1 : 0;
  r.p_value = chi_square_survival(r.statistic, r.dof);
  return r;
}

double histogram_tv(const Histogram& a, const Histogram& b) {
  const double na = static_cast<double>(total_count(a));
  const double nb = static_cast<double>(total_count(b));
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("histogram_tv: empty sample");
  const std::size_t k = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double pa = i < a.size() ? static_cast<double>(a[i]) / na : 0.0;
    const double pb = i < b.size() ? static_cast<double>(b[i]) / nb : 0.0;
    sum += std::fabs(pa - pb);
  }
  return 0.5 * sum;
}

double histogram_tv(const Histogram& a, std::span<const double> pmf) {
  const double na = static_cast<double>(total_count(a));
  if (na == 0.0) throw std::invalid_argument("histogram_tv: empty sample");
  double sum = 0.0;
  double emp_tail = 1.0;
  double pmf_tail = 1.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    const double pa = i < a.size() ? static_cast<double>(a[i]) / na : 0.0;
    sum += std::fabs(pa - pmf[i]);
    emp_tail -= pa;
    pmf_tail -= pmf[i];
  }
  sum += std::fabs(std::max(0.0, emp_tail) - std::max(0.0, pmf_tail));
  return 0.5 * sum;
}

SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t i = 0;
  for (double x : xs) {
    ++i;
    const double d = x - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (x - mean);
  }
  m.mean = mean;
  m.variance = xs.size() > 1 ? m2 / static_cast<double>(xs.size() - 1) : 0.0;
  return m;
}

SampleMoments histogram_moments(const Histogram& h) {
  SampleMoments m;
  long double n = 0.0L;
  long double s = 0.0L;
  long double s2 = 0.0L;
  for (std::size_t v = 0; v < h.size(); ++v) {
    const long double c = h[v];
    n += c;
    s += c * v;
    s2 += c * v * v;
  }
  m.count = static_cast<std::size_t>(n);
  if (n == 0.0L) return m;
  m.mean = static_cast<double>(s / n);
  m.variance = n > 1.0L ? static_cast<double>((s2 - s * s / n) / (n - 1.0L)) : 0.0;
  return m;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line needs at least two (x, y) points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: x values are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] + frac * (xs[hi] - xs[lo]);
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

}  // namespace cpdigraph
