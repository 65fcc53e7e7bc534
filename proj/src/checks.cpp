#include "cpdigraph/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/graph_core.hpp"
#include "cpdigraph/random.hpp"
#include "cpdigraph/sampler.hpp"
#include "cpdigraph/stats.hpp"

namespace cpdigraph {

using nlohmann::json;

namespace {

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t group, std::uint64_t r) {
  return CounterRng::derive_key(seed, static_cast<std::uint64_t>(StreamTag::Replicate),
                                (group << 40) | r);
}

CheckResult below(std::string name, double statistic, double threshold, json detail = json::object()) {
  CheckResult r;
  r.name = std::move(name);
  r.statistic = statistic;
  r.threshold = threshold;
  r.relation = "<";
  r.pass = statistic < threshold;
  r.detail = std::move(detail);
  return r;
}

CheckResult p_value_at_least(std::string name, const ChiSquareResult& chi, double alpha,
                             json detail = json::object()) {
  CheckResult r;
  r.name = std::move(name);
  r.statistic = chi.p_value;
  r.threshold = alpha;
  r.relation = "p>=";
  r.pass = chi.passes(alpha);
  detail["chi_square"] = chi.statistic;
  detail["dof"] = chi.dof;
  r.detail = std::move(detail);
  return r;
}

WeightSequence constant_weights(std::size_t n, double c) {
  return WeightSequence(std::vector<WeightPair>(n, WeightPair{c, c}));
}

const WeightModel& pareto_model() {
  static const WeightModel m = WeightModel::pareto_mirrored(3.5, 1.0);
  return m;
}

}  // namespace

json to_json(const CheckResult& r) {
  return {{"name", r.name},     {"statistic", r.statistic}, {"threshold", r.threshold},
          {"relation", r.relation}, {"pass", r.pass},       {"gating", r.gating},
          {"detail", r.detail}};
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return !r.gating || r.pass; });
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_sampler_exactness(std::uint64_t seed, std::size_t samples) {
  struct Case {
    std::string label;
    WeightSequence w;
    double normalizer;
  };
  std::vector<Case> cases;
  for (std::size_t n : {2u, 3u}) {
    cases.push_back({"constant.n" + std::to_string(n), constant_weights(n, 1.0),
                     static_cast<double>(n)});
    auto w = sample_weights(pareto_model(), n, seed);
    const double L = normalizer(w, moments(pareto_model()).mu, NormalizerMode::CapacitySum);
    cases.push_back({"pareto.n" + std::to_string(n), std::move(w), L});
  }

  std::vector<CheckResult> out;
  std::uint64_t group = 0;
  for (const Case& c : cases) {
    const std::size_t n = c.w.size();
    for (const bool naive : {true, false}) {
      std::vector<Histogram> hist(n * n);
      for (std::size_t r = 0; r < samples; ++r) {
        const std::uint64_t s = replicate_seed(seed, group, r);
        const auto g = naive ? sample_graph_naive(c.w, c.normalizer, s)
                             : sample_graph_fast(c.w, c.normalizer, s);
        for (Vertex v = 0; v < n; ++v) {
          for (Vertex u = 0; u < n; ++u) record(hist[v * n + u], g.multiplicity(v, u));
        }
      }
      ++group;
      std::vector<ChiSquareResult> parts;
      json means = json::array();
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
          const double mean = c.w[v].w_out * c.w[u].w_in / c.normalizer;
          means.push_back(mean);
          parts.push_back(chi_square_poisson(hist[v * n + u], mean));
        }
      }
      out.push_back(p_value_at_least(
          std::string("sampler.") + (naive ? "naive." : "fast.") + c.label, combine(parts), 0.01,
          {{"samples", samples}, {"pair_means", means}}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_construction_equivalence(std::uint64_t seed, std::size_t reps_small,
                                                        std::size_t n_large,
                                                        std::size_t reps_large) {
  const std::array<std::string, 3> names = {"oriented_sum", "random_orientation", "direct"};
  auto build = [](const WeightSequence& w, double L, std::size_t which, std::uint64_t s) {
    switch (which) {
      case 0: return sample_oriented_sum(w, s);
      case 1: return sample_randomly_oriented_nr(w, s);
      default: return sample_graph_fast(w, L, s);
    }
  };

  std::vector<CheckResult> out;

  {
    const auto w = sample_weights(pareto_model(), 2, seed);
    const double L = w.sum_in();
    // Per construction: total arcs, then the four ordered pairs.
    std::array<std::array<Histogram, 5>, 3> hist;
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t r = 0; r < reps_small; ++r) {
        const auto g = build(w, L, c, replicate_seed(seed, c, r));
        record(hist[c][0], g.total_arcs());
        for (Vertex v = 0; v < 2; ++v) {
          for (Vertex u = 0; u < 2; ++u) record(hist[c][1 + 2 * v + u], g.multiplicity(v, u));
        }
      }
    }
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        json per = json::object();
        double worst = 0.0;
        const std::array<std::string, 5> labels = {"total", "E(1,1)", "E(1,2)", "E(2,1)", "E(2,2)"};
        for (std::size_t k = 0; k < 5; ++k) {
          const double tv = histogram_tv(hist[a][k], hist[b][k]);
          per[labels[k]] = tv;
          worst = std::max(worst, tv);
        }
        out.push_back(below("equivalence.n2." + names[a] + "_vs_" + names[b], worst, 0.01,
                            {{"tv", per}, {"reps", reps_small}}));
      }
    }
  }

  {
    const auto w = sample_weights(pareto_model(), n_large, seed);
    const double L = w.sum_in();
    std::array<Histogram, 3> total;
    std::array<Histogram, 3> loops;
    std::array<std::vector<double>, 3> totals;
    for (std::size_t c = 0; c < 3; ++c) {
      for (std::size_t r = 0; r < reps_large; ++r) {
        const auto g = build(w, L, c, replicate_seed(seed, 10 + c, r));
        record(total[c], g.total_arcs());
        record(loops[c], g.total_loops());
        totals[c].push_back(static_cast<double>(g.total_arcs()));
      }
    }
    const std::string tag = "equivalence.n" + std::to_string(n_large) + ".";
    for (std::size_t c = 0; c < 2; ++c) {
      const auto ma = sample_moments(totals[c]);
      const auto mb = sample_moments(totals[2]);
      const double z = (ma.mean - mb.mean) /
                       std::sqrt((ma.variance + mb.variance) / static_cast<double>(reps_large));
      out.push_back(p_value_at_least(tag + names[c] + "_vs_direct.total_arcs",
                                     chi_square_two_sample(total[c], total[2]), 0.01,
                                     {{"mean", ma.mean},
                                      {"mean_direct", mb.mean},
                                      {"variance", ma.variance},
                                      {"variance_direct", mb.variance},
                                      {"mean_z", z},
                                      {"reps", reps_large}}));
      out.push_back(p_value_at_least(tag + names[c] + "_vs_direct.loops",
                                     chi_square_two_sample(loops[c], loops[2]), 0.01,
                                     {{"reps", reps_large}}));
    }
  }

  {
    // Constant capacity 2: in- and out-degree laws of the oriented sum agree.
    const auto w = constant_weights(n_large, 2.0);
    Histogram d_in;
    Histogram d_out;
    for (std::size_t r = 0; r < reps_large; ++r) {
      const auto g = sample_oriented_sum(w, replicate_seed(seed, 20, r));
      for (const auto& d : degrees(g)) {
        record(d_in, d.d_in);
        record(d_out, d.d_out);
      }
    }
    out.push_back(below("equivalence.n" + std::to_string(n_large) + ".oriented_sum.in_out_symmetry",
                        histogram_tv(d_in, d_out), 0.02, {{"reps", reps_large}}));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_evolution(std::uint64_t seed, std::size_t reps) {
  struct Case {
    std::string label;
    WeightSequence w;
    double mu;
  };
  const std::vector<Case> cases = {
      {"constant1", constant_weights(5, 1.0), 1.0},
      {"pareto", sample_weights(pareto_model(), 5, seed), moments(pareto_model()).mu},
  };
  std::vector<CheckResult> out;
  std::uint64_t group = 0;
  for (const Case& c : cases) {
    Histogram evolved;
    Histogram direct;
    for (std::size_t r = 0; r < reps; ++r) {
      auto g = sample_graph_fast(c.w.prefix(2), 2.0 * c.mu, replicate_seed(seed, group, 4 * r));
      for (std::size_t n = 2; n < 5; ++n) {
        g = evolve(g, c.w, c.mu * static_cast<double>(n), c.mu * static_cast<double>(n + 1),
                   replicate_seed(seed, group, 4 * r + n - 1));
      }
      record(evolved, g.total_arcs());
      record(direct, sample_graph_fast(c.w, 5.0 * c.mu, replicate_seed(seed, group + 1, r)).total_arcs());
    }
    group += 2;
    const double mean = c.w.sum_in() * c.w.sum_out() / (5.0 * c.mu);
    const auto chi_evolved = chi_square_poisson(evolved, mean);
    const auto chi_direct = chi_square_poisson(direct, mean);
    out.push_back(below("evolution." + c.label + ".n2_to_n5", histogram_tv(evolved, direct), 0.01,
                        {{"reps", reps},
                         {"expected_mean", mean},
                         {"evolved_p_value", chi_evolved.p_value},
                         {"direct_p_value", chi_direct.p_value}}));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_degree_limit(std::uint64_t seed, std::size_t n,
                                            std::size_t empirical_tail_n) {
  std::vector<CheckResult> out;
  const auto constant = WeightModel::mirrored(ConstantLaw{2.0});
  {
    const auto w = sample_weights(constant, n, seed);
    const auto g = sample_graph_fast(w, 2.0 * static_cast<double>(n), replicate_seed(seed, 0, 0));
    const auto fit = degree_fit_test(g, constant, 20, seed);
    out.push_back(below("degree.constant2.joint_tv", fit.tv, 0.01,
                        {{"n", n}, {"noise_floor", fit.noise_floor}, {"underpowered", fit.underpowered}}));
  }

  const double target = -2.5;
  {
    const auto pmf = mixed_poisson_pmf(pareto_model(), 200, 1'000'000, seed);
    const double slope = tail_slope(pmf, 10, 100);
    out.push_back(below("degree.pareto3.5.mixed_poisson_tail_slope", std::fabs(slope - target), 0.3,
                        {{"slope", slope}, {"target", target}, {"k_range", {10, 100}}}));
  }
  {
    const auto w = sample_weights(pareto_model(), empirical_tail_n, seed);
    const auto g = sample_graph_fast(w, moments(pareto_model()).mu * static_cast<double>(empirical_tail_n),
                                     replicate_seed(seed, 1, 0));
    std::vector<double> count(101, 0.0);
    for (const auto& d : degrees(g)) {
      for (std::size_t k = 10; k <= std::min<std::uint64_t>(d.d_in, 100); ++k) count[k] += 1.0;
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = 10; k <= 100 && count[k] > 0.0; ++k) {
      x.push_back(std::log(static_cast<double>(k)));
      y.push_back(std::log(count[k] / static_cast<double>(empirical_tail_n)));
    }
    const double slope = x.size() >= 2 ? fit_line(x, y).slope : 0.0;
    auto r = below("degree.pareto3.5.empirical_tail_slope", std::fabs(slope - target), 0.3,
                   {{"slope", slope}, {"target", target}, {"n", empirical_tail_n}});
    r.gating = false;
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult check_degree_fit(const MultiDigraph& g, const WeightModel& model, std::uint64_t seed,
                             double threshold) {
  const auto fit = degree_fit_test(g, model, 30, seed, threshold);
  return below("degree.fit", fit.tv, threshold,
               {{"n", fit.n}, {"noise_floor", fit.noise_floor}, {"underpowered", fit.underpowered}});
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_loops(std::uint64_t seed, std::size_t n, std::size_t reps) {
  std::vector<CheckResult> out;
  for (std::size_t size : {std::size_t{1}, std::size_t{10}, std::min<std::size_t>(n, 1000)}) {
    const auto res = loop_test(WeightModel::constant(1.0), size, reps, seed);
    out.push_back(p_value_at_least("loops.constant1.n" + std::to_string(size),
                                   {res.chi_square, res.dof, res.p_value}, 0.01,
                                   {{"mean", res.mean}, {"expected_mean", res.expected_mean}, {"reps", reps}}));
  }
  auto z_check = [&](std::string name, const WeightModel& model) {
    const auto res = loop_test(model, n, reps, seed);
    CheckResult r;
    r.name = std::move(name);
    r.statistic = std::fabs(res.z_score);
    r.threshold = 3.0;
    r.relation = "|z|<";
    r.pass = r.statistic < 3.0;
    r.detail = {{"mean", res.mean},
                {"expected_mean", res.expected_mean},
                {"variance", res.variance},
                {"n", n},
                {"reps", reps},
                {"chi_square_p_value", res.p_value}};
    return r;
  };
  out.push_back(z_check("loops.constant2.mean", WeightModel::constant(2.0)));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct GiantSample {
  double weak = 0.0;
  double strong = 0.0;
  double reach_strong = 0.0;   ///< vertices with a path into the largest strong class
  double reached_strong = 0.0;  ///< vertices reachable from it
};

GiantSample measure_giants(const MultiDigraph& g) {
  const Partition strong = strong_components(g);
  const Partition weak = weak_components(g);
  const std::uint32_t label = strong.largest_label();
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (strong.label[v] == label) members.push_back(v);
  }
  const Adjacency adj(g);
  const double n = static_cast<double>(g.n());
  return {static_cast<double>(weak.largest()) / n, static_cast<double>(strong.largest()) / n,
          static_cast<double>(count_reachable(adj, members, false)) / n,
          static_cast<double>(count_reachable(adj, members, true)) / n};
}

GiantSample average_giants(std::size_t reps, auto&& sample) {
  GiantSample avg;
  for (std::size_t r = 0; r < reps; ++r) {
    const GiantSample s = measure_giants(sample(r));
    avg.weak += s.weak;
    avg.strong += s.strong;
    avg.reach_strong += s.reach_strong;
    avg.reached_strong += s.reached_strong;
  }
  const double k = static_cast<double>(reps);
  avg.weak /= k;
  avg.strong /= k;
  avg.reach_strong /= k;
  avg.reached_strong /= k;
  return avg;
}

}  // namespace

std::vector<CheckResult> check_giant_components(std::uint64_t seed, const GiantOptions& options) {
  if (options.reps == 0) throw std::invalid_argument("giant component check needs reps > 0");
  std::vector<CheckResult> out;
  const json base = {{"n", options.n}, {"reps", options.reps}};

  {
    const auto model = WeightModel::mirrored(ConstantLaw{2.0});
    const auto theory = survival_fractions(model, SurvivalConfiguration::MirroredSum);
    const auto avg = average_giants(options.reps, [&](std::size_t r) {
      const std::uint64_t s = replicate_seed(seed, 0, r);
      return sample_oriented_sum(sample_weights(model, options.n, s), s);
    });
    json d = base;
    d["weak_fraction"] = avg.weak;
    d["zeta"] = theory.zeta;
    d["zeta_weak"] = theory.zeta_weak;

    auto literal = below("giant.mirrored_constant2.weak_vs_zeta", std::fabs(avg.weak - theory.zeta),
                         options.weak_tol, d);
    literal.gating = options.weak_against_zeta_gates;
    out.push_back(std::move(literal));

    auto weak = below("giant.mirrored_constant2.weak_vs_zeta_weak",
                      std::fabs(avg.weak - theory.zeta_weak), options.weak_tol, d);
    weak.gating = !options.weak_against_zeta_gates;
    out.push_back(std::move(weak));

    json r = base;
    r["reach_fraction"] = avg.reach_strong;
    r["reached_fraction"] = avg.reached_strong;
    r["zeta"] = theory.zeta;
    auto reach = below("giant.mirrored_constant2.forward_survival_vs_zeta",
                       std::max(std::fabs(avg.reach_strong - theory.zeta),
                                std::fabs(avg.reached_strong - theory.zeta)),
                       options.weak_tol, r);
    reach.gating = !options.weak_against_zeta_gates;
    out.push_back(std::move(reach));

    json s = base;
    s["strong_fraction"] = avg.strong;
    s["pi"] = theory.pi;
    out.push_back(below("giant.mirrored_constant2.strong_vs_pi", std::fabs(avg.strong - theory.pi),
                        options.strong_tol, s));
  }

  {
    const ConstantLaw two{2.0};
    const auto model = WeightModel::independent(two, two);
    const auto theory = survival_fractions(model, SurvivalConfiguration::IndependentSum);
    const auto avg = average_giants(options.reps, [&](std::size_t r) {
      return sample_independent_sum(two, two, options.n, replicate_seed(seed, 1, r)).graph;
    });
    json s = base;
    s["strong_fraction"] = avg.strong;
    s["zeta_1"] = theory.zeta_f;
    s["zeta_2"] = theory.zeta_b;
    s["pi"] = theory.pi;
    out.push_back(below("giant.independent_constant2.strong_vs_zeta1_zeta2",
                        std::fabs(avg.strong - theory.pi), options.strong_tol, s));

    json d = base;
    d["weak_fraction"] = avg.weak;
    d["zeta_weak"] = theory.zeta_weak;
    auto weak = below("giant.independent_constant2.weak_vs_zeta_weak",
                      std::fabs(avg.weak - theory.zeta_weak), options.weak_tol, d);
    weak.gating = !options.weak_against_zeta_gates;
    out.push_back(std::move(weak));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_critical_scaling(std::uint64_t seed,
                                                const ScalingCheckOptions& options) {
  const double tau = 3.5;
  const auto res = scaling_exponent_experiment(WeightModel::critical_pareto_mirrored(tau),
                                               options.n_list, options.reps, seed, options.bootstrap);
  json points = json::array();
  for (const auto& p : res.points) {
    points.push_back({{"n", p.n},
                      {"median_weak", p.median_weak},
                      {"median_forward", p.median_forward},
                      {"median_strong", p.median_strong}});
  }
  auto make = [&](const char* kind, const SlopeEstimate& est, bool gating) {
    auto r = below(std::string("scaling.pareto3.5.") + kind + "_slope",
                   std::fabs(est.slope - res.alpha), options.tol,
                   {{"slope", est.slope},
                    {"ci_low", est.ci_low},
                    {"ci_high", est.ci_high},
                    {"alpha", res.alpha},
                    {"reps", options.reps},
                    {"points", points}});
    r.gating = gating;
    return r;
  };
  return {make("weak", res.weak, options.weak_gates), make("forward", res.forward, !options.weak_gates),
          make("strong", res.strong, false)};
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> check_independence(std::uint64_t seed, std::size_t reps) {
  const auto model = WeightModel::constant(1.0);
  const auto small = independence_test(model, 100, 2, reps, seed);
  const auto large = independence_test(model, 10'000, 2, reps, seed);
  const json d = {{"statistic_n100", small.statistic},
                  {"statistic_n10000", large.statistic},
                  {"argmax_n10000", large.first + "," + large.second},
                  {"argmax_n100", small.first + "," + small.second},
                  {"reps", reps}};
  return {below("independence.constant1.n10000", large.statistic, 0.01, d),
          below("independence.constant1.decreasing", large.statistic - small.statistic, 0.0, d)};
}

// ---------------------------------------------------------------------------

namespace {

/// Direct series for the TV distance, pmfs from log-gamma.
double series_tv(double a, double b) {
  const double m = std::max(a, b);
  const auto terms = static_cast<std::size_t>(std::max(200.0, m + 40.0 * std::sqrt(m) + 50.0));
  auto pmf = [](std::size_t j, double lambda) {
    if (lambda == 0.0) return j == 0 ? 1.0 : 0.0;
    const double jd = static_cast<double>(j);
    return std::exp(jd * std::log(lambda) - lambda - std::lgamma(jd + 1.0));
  };
  double sum = 0.0;
  for (std::size_t j = 0; j <= terms; ++j) sum += std::fabs(pmf(j, a) - pmf(j, b));
  return 0.5 * sum;
}

}  // namespace

std::vector<CheckResult> check_poisson_tv(std::uint64_t seed, std::size_t pairs) {
  CounterRng rng(seed, StreamTag::Replicate, 0);
  auto arg = [&rng] {
    // Mix exact zeros, small and moderate means.
    const double u = rng.uniform();
    if (u < 0.05) return 0.0;
    if (u < 0.5) return 3.0 * rng.uniform();
    return 60.0 * rng.uniform();
  };
  double asym = 0.0;
  double diag = 0.0;
  double range_violation = 0.0;
  double triangle_excess = 0.0;
  double series_error = 0.0;
  for (std::size_t i = 0; i < pairs; ++i) {
    const double a = arg();
    const double b = arg();
    const double c = arg();
    const double ab = poisson_tv(a, b);
    asym = std::max(asym, std::fabs(ab - poisson_tv(b, a)));
    diag = std::max(diag, std::fabs(poisson_tv(a, a)));
    range_violation = std::max({range_violation, -ab, ab - 1.0});
    triangle_excess =
        std::max(triangle_excess, ab - poisson_tv(a, c) - poisson_tv(c, b));
    series_error = std::max(series_error, std::fabs(ab - series_tv(a, b)));
  }
  const json d = {{"pairs", pairs}};
  return {below("poisson_tv.symmetry", asym, 1e-12, d),
          below("poisson_tv.diagonal", diag, 1e-12, d),
          below("poisson_tv.range", range_violation, 1e-12, d),
          below("poisson_tv.triangle", triangle_excess, 1e-12, d),
          below("poisson_tv.series", series_error, 1e-10, d)};
}

// ---------------------------------------------------------------------------

Suite parse_suite(std::string_view text) {
  if (text == "quick") return Suite::Quick;
  if (text == "full") return Suite::Full;
  throw std::invalid_argument("unknown suite '" + std::string(text) + "' (expected quick or full)");
}

std::vector<CheckResult> run_suite(Suite suite, std::uint64_t seed, const ProgressFn& progress) {
  const bool full = suite == Suite::Full;
  std::vector<CheckResult> all;
  auto run = [&](std::string_view name, auto&& fn) {
    if (progress) progress(name);
    auto part = fn();
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  };
  run("poisson_tv", [&] { return check_poisson_tv(seed); });
  run("sampler", [&] { return check_sampler_exactness(seed, full ? 100'000 : 20'000); });
  run("equivalence", [&] {
    return check_construction_equivalence(seed, 100'000, 1000, 1000);
  });
  run("evolution", [&] { return check_evolution(seed, 100'000); });
  run("degree", [&] { return check_degree_limit(seed, 100'000, full ? 1'000'000 : 200'000); });
  run("loops", [&] { return full ? check_loops(seed) : check_loops(seed, 1000, 2000); });
  run("independence", [&] { return check_independence(seed); });
  run("giant", [&] {
    GiantOptions o;
    o.weak_against_zeta_gates = false;
    if (!full) {
      o.n = 20'000;
      o.reps = 5;
    }
    return check_giant_components(seed, o);
  });
  if (full) {
    run("scaling", [&] {
      ScalingCheckOptions o;
      o.weak_gates = false;
      return check_critical_scaling(seed, o);
    });
  }
  return all;
}

}  // namespace cpdigraph
