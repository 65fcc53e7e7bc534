#include <cmath>
#include <stdexcept>
#include <string>

#include "cpdigraph/analysis.hpp"
#include "cpdigraph/random.hpp"

namespace cpdigraph {

namespace {

double average(const std::vector<WeightPair>& pts, auto&& f) {
  long double sum = 0.0L;
  for (const WeightPair& p : pts) sum += f(p);
  return static_cast<double>(sum / static_cast<long double>(pts.size()));
}

/// Monotone iteration q <- step(q) from q = 0.
ExtinctionResult iterate_from_zero(auto&& step, double mean_offspring, const SolverOptions& options,
                                   const char* what) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("solver tolerance must be > 0");
  ExtinctionResult r;
  r.mean_offspring = mean_offspring;
  double q = 0.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    const double next = step(q);
    r.trace.push_back(next);
    r.iterations = it;
    if (std::fabs(next - q) < options.tol) {
      r.q = next;
      return r;
    }
    q = next;
  }
  throw NonConvergence(std::string(what) + ": no convergence within " +
                           std::to_string(options.max_iter) + " iterations (last iterate " +
                           std::to_string(q) + ")",
                       q);
}

std::vector<WeightPair> marginal_points(const MarginalLaw& law, const SolverOptions& options) {
  if (std::holds_alternative<ConstantLaw>(law)) {
    const double c = std::get<ConstantLaw>(law).value;
    return {{c, c}};
  }
  CounterRng rng(options.seed, StreamTag::Quadrature, 1);
  return stratified_sample(WeightModel::mirrored(law), options.quadrature_size, rng);
}

/// Giant of the undirected multigraph: two vertex types, reached along an
/// arc into them (size-biased by w_in) or out of them (by w_out).
double undirected_giant(const WeightModel& model, const std::vector<WeightPair>& pts,
                        const SolverOptions& options) {
  const Moments m = moments(model);
  // Perron root of [[rho, nu_in], [nu_out, rho]] / mu.
  const double radius = (m.rho + std::sqrt(m.nu_in * m.nu_out)) / m.mu;
  if (radius <= 1.0) return 0.0;

  const double mu_in = average(pts, [](const WeightPair& p) { return p.w_in; });
  const double mu_out = average(pts, [](const WeightPair& p) { return p.w_out; });
  double a = 0.0;  // extinction below a vertex entered through an in-arc
  double b = 0.0;  // ... through an out-arc
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    double na = 0.0;
    double nb = 0.0;
    for (const WeightPair& p : pts) {
      const double e = std::exp(-p.w_out * (1.0 - a) - p.w_in * (1.0 - b));
      na += p.w_in * e;
      nb += p.w_out * e;
    }
    na /= mu_in * static_cast<double>(pts.size());
    nb /= mu_out * static_cast<double>(pts.size());
    const bool done = std::fabs(na - a) < options.tol && std::fabs(nb - b) < options.tol;
    a = na;
    b = nb;
    if (done) {
      return 1.0 - average(pts, [&](const WeightPair& p) {
               return std::exp(-p.w_out * (1.0 - a) - p.w_in * (1.0 - b));
             });
    }
  }
  throw NonConvergence("undirected giant: no convergence", a);
}

}  // namespace

std::vector<WeightPair> quadrature_points(const WeightModel& model, const SolverOptions& options) {
  CounterRng rng(options.seed, StreamTag::Quadrature, 0);
  if (model.degenerate()) return {model.draw(rng)};
  if (options.quadrature_size == 0) throw std::invalid_argument("quadrature_size must be > 0");
  return stratified_sample(model, options.quadrature_size, rng);
}

ExtinctionResult solve_extinction(const WeightModel& model, Direction direction,
                                  const SolverOptions& options) {
  const Moments m = moments(model);
  const double mean_offspring = m.rho / m.mu;
  if (mean_offspring <= 1.0) {
    ExtinctionResult r;
    r.mean_offspring = mean_offspring;
    return r;
  }
  const auto pts = quadrature_points(model, options);
  const bool fwd = direction == Direction::Forward;
  // Normalise by the sample mean so that q = 1 stays a fixed point.
  const double bias_mean =
      average(pts, [fwd](const WeightPair& p) { return fwd ? p.w_in : p.w_out; });
  auto step = [&](double q) {
    return average(pts, [&](const WeightPair& p) {
             const double bias = fwd ? p.w_in : p.w_out;
             const double rate = fwd ? p.w_out : p.w_in;
             return bias * std::exp(-rate * (1.0 - q));
           }) /
           bias_mean;
  };
  return iterate_from_zero(step, mean_offspring, options, "solve_extinction");
}

ExtinctionResult solve_mixed_poisson_extinction(const MarginalLaw& law,
                                                const SolverOptions& options) {
  validate(law);
  const double mean_offspring = mean(law);
  if (mean_offspring <= 1.0) {
    ExtinctionResult r;
    r.mean_offspring = mean_offspring;
    return r;
  }
  const auto pts = marginal_points(law, options);
  auto step = [&](double q) {
    return average(pts, [q](const WeightPair& p) { return std::exp(-p.w_in * (1.0 - q)); });
  };
  return iterate_from_zero(step, mean_offspring, options, "solve_mixed_poisson_extinction");
}

std::string_view to_string(SurvivalConfiguration c) {
  switch (c) {
    case SurvivalConfiguration::MirroredSum: return "mirrored-sum";
    case SurvivalConfiguration::IndependentSum: return "independent-sum";
    case SurvivalConfiguration::Plain: return "plain";
  }
  return "unknown";
}

SurvivalConfiguration parse_survival_configuration(std::string_view text) {
  if (text == "mirrored-sum") return SurvivalConfiguration::MirroredSum;
  if (text == "independent-sum") return SurvivalConfiguration::IndependentSum;
  if (text == "plain") return SurvivalConfiguration::Plain;
  throw std::invalid_argument("unknown configuration '" + std::string(text) +
                              "' (expected mirrored-sum, independent-sum or plain)");
}

SurvivalReport survival_fractions(const WeightModel& model, SurvivalConfiguration configuration,
                                  const SolverOptions& options) {
  const Moments m = moments(model);
  SurvivalReport r;
  r.configuration = configuration;
  r.critical_ratio_in = m.nu_in / m.mu;
  r.critical_ratio_out = m.nu_out / m.mu;
  r.mean_offspring = m.rho / m.mu;

  const auto pts = quadrature_points(model, options);

  switch (configuration) {
    case SurvivalConfiguration::MirroredSum: {
      if (!model.mirrored()) {
        throw std::invalid_argument("mirrored-sum configuration needs a mirrored weight model");
      }
      const double q = solve_extinction(model, Direction::Forward, options).q;
      r.q_f = r.q_b = q;
      r.zeta = average(pts, [q](const WeightPair& p) { return -std::expm1(-p.w_out * (1.0 - q)); });
      r.pi = average(pts, [q](const WeightPair& p) {
        const double z = -std::expm1(-p.w_out * (1.0 - q));
        return z * z;
      });
      r.zeta_f = r.zeta_b = r.zeta;
      break;
    }
    case SurvivalConfiguration::IndependentSum: {
      if (model.kind() != ModelKind::IndependentProduct && !model.degenerate()) {
        throw std::invalid_argument(
            "independent-sum configuration needs independent (or constant) weights");
      }
      r.q_f = solve_mixed_poisson_extinction(model.out_law(), options).q;
      r.q_b = solve_mixed_poisson_extinction(model.in_law(), options).q;
      r.zeta_f = 1.0 - r.q_f;
      r.zeta_b = 1.0 - r.q_b;
      r.zeta = r.zeta_f;
      r.pi = r.zeta_f * r.zeta_b;
      break;
    }
    case SurvivalConfiguration::Plain: {
      r.q_f = solve_extinction(model, Direction::Forward, options).q;
      r.q_b = solve_extinction(model, Direction::Backward, options).q;
      const double qf = r.q_f;
      const double qb = r.q_b;
      r.zeta_f = average(pts, [qf](const WeightPair& p) { return -std::expm1(-p.w_out * (1.0 - qf)); });
      r.zeta_b = average(pts, [qb](const WeightPair& p) { return -std::expm1(-p.w_in * (1.0 - qb)); });
      r.zeta = r.zeta_f;
      r.pi = average(pts, [qf, qb](const WeightPair& p) {
        return -std::expm1(-p.w_out * (1.0 - qf)) * -std::expm1(-p.w_in * (1.0 - qb));
      });
      r.pi_conjectural = true;
      break;
    }
  }
  r.zeta_weak = undirected_giant(model, pts, options);
  return r;
}

}  // namespace cpdigraph
