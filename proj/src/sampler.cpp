#include "cpdigraph/sampler.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpdigraph/alias_table.hpp"
#include "cpdigraph/parallel.hpp"
#include "cpdigraph/random.hpp"

namespace cpdigraph {

namespace {

using PairList = std::vector<std::pair<Vertex, Vertex>>;

constexpr std::size_t kArcBlock = 1u << 16;

void check_normalizer(double normalizer) {
  if (!(normalizer > 0.0) || !std::isfinite(normalizer)) {
    throw std::invalid_argument("normalizer L_N must be finite and > 0");
  }
}

/// Poisson(mean_count) points, each an independent (src, dst) draw.
/// Count and every block of positions use their own streams.
PairList poisson_pair_process(const AliasTable& src, const AliasTable& dst, double mean_count,
                              std::uint64_t seed, StreamTag tag) {
  CounterRng count_rng(seed, tag, 0);
  const std::uint64_t k = sample_poisson(count_rng, mean_count);
  PairList pairs(k);
  const std::size_t blocks = (k + kArcBlock - 1) / kArcBlock;
  parallel_for(blocks, [&](std::size_t b) {
    CounterRng rng(seed, tag, 1 + b);
    const std::size_t hi = std::min<std::size_t>(k, (b + 1) * kArcBlock);
    for (std::size_t i = b * kArcBlock; i < hi; ++i) {
      const Vertex s = src.sample(rng);
      const Vertex d = dst.sample(rng);
      pairs[i] = {s, d};
    }
  });
  return pairs;
}

void require_mirrored(const WeightSequence& w) {
  if (!w.mirrored()) {
    throw std::invalid_argument("capacity construction needs w_in == w_out at every vertex");
  }
}

}  // namespace

MultiDigraph sample_graph_naive(const WeightSequence& w, double normalizer, std::uint64_t seed,
                                std::size_t max_n) {
  check_normalizer(normalizer);
  const std::size_t n = w.size();
  if (n > max_n) {
    throw std::invalid_argument("naive sampler is O(N^2); N=" + std::to_string(n) +
                                " exceeds cap " + std::to_string(max_n));
  }
  std::vector<std::vector<Arc>> rows(n);
  parallel_for(n, [&](std::size_t v) {
    CounterRng rng(seed, StreamTag::NaiveRow, v);
    const double scale = w[v].w_out / normalizer;
    for (std::size_t t = 0; t < n; ++t) {
      const std::uint64_t m = sample_poisson(rng, scale * w[t].w_in);
      if (m > 0) rows[v].push_back({static_cast<Vertex>(v), static_cast<Vertex>(t), m});
    }
  });
  std::vector<Arc> arcs;
  for (auto& row : rows) arcs.insert(arcs.end(), row.begin(), row.end());
  return MultiDigraph::from_arcs(n, std::move(arcs));
}

MultiDigraph sample_graph_fast(const WeightSequence& w, double normalizer, std::uint64_t seed) {
  check_normalizer(normalizer);
  const auto out_w = w.out_weights();
  const auto in_w = w.in_weights();
  const AliasTable sources(out_w);
  const AliasTable targets(in_w);
  auto pairs = poisson_pair_process(sources, targets, w.sum_out() * w.sum_in() / normalizer,
                                    seed, StreamTag::ArcBlock);
  return MultiDigraph::from_pairs(w.size(), std::move(pairs));
}

MultiDigraph evolve(const MultiDigraph& g, const WeightSequence& w, double normalizer_n,
                    double normalizer_next, std::uint64_t seed) {
  check_normalizer(normalizer_n);
  check_normalizer(normalizer_next);
  if (normalizer_next < normalizer_n) {
    throw std::invalid_argument("evolve needs L_{N+1} >= L_N (non-decreasing normalizer)");
  }
  const std::size_t n = g.n();
  if (w.size() < n + 1) throw std::invalid_argument("evolve needs at least N+1 weights");

  CounterRng rng(seed, StreamTag::Evolve, n);
  const double keep = normalizer_n / normalizer_next;
  std::vector<Arc> arcs;
  arcs.reserve(g.distinct_pairs() + 2 * n + 1);
  for (const Arc& a : g.arcs()) {
    const std::uint64_t m = sample_binomial(rng, a.mult, keep);
    if (m > 0) arcs.push_back({a.src, a.dst, m});
  }

  const auto fresh = static_cast<Vertex>(n);
  const WeightPair& wf = w[n];
  for (std::size_t t = 0; t <= n; ++t) {
    const std::uint64_t m = sample_poisson(rng, wf.w_out * w[t].w_in / normalizer_next);
    if (m > 0) arcs.push_back({fresh, static_cast<Vertex>(t), m});
  }
  for (std::size_t s = 0; s < n; ++s) {
    const std::uint64_t m = sample_poisson(rng, w[s].w_out * wf.w_in / normalizer_next);
    if (m > 0) arcs.push_back({static_cast<Vertex>(s), fresh, m});
  }
  return MultiDigraph::from_arcs(n + 1, std::move(arcs));
}

OrientedSum sample_oriented_sum_parts(const WeightSequence& capacities, std::uint64_t seed) {
  require_mirrored(capacities);
  const auto cap = capacities.in_weights();
  const AliasTable endpoints(cap);
  const double total = capacities.sum_in();
  // Ordered endpoint draws at intensity c_a c_b / 2L give Poisson(c_v c_w / L)
  // per unordered pair and Poisson(c_v^2 / 2L) per loop; here L = total.
  const double mean_edges = total / 2.0;

  auto up = poisson_pair_process(endpoints, endpoints, mean_edges, seed, StreamTag::OrientedFirst);
  for (auto& [a, b] : up) {
    if (a > b) std::swap(a, b);
  }
  auto down =
      poisson_pair_process(endpoints, endpoints, mean_edges, seed, StreamTag::OrientedSecond);
  for (auto& [a, b] : down) {
    if (a < b) std::swap(a, b);
  }

  PairList both;
  both.reserve(up.size() + down.size());
  both.insert(both.end(), up.begin(), up.end());
  both.insert(both.end(), down.begin(), down.end());

  const std::size_t n = capacities.size();
  return {MultiDigraph::from_pairs(n, std::move(up)), MultiDigraph::from_pairs(n, std::move(down)),
          MultiDigraph::from_pairs(n, std::move(both))};
}

MultiDigraph sample_oriented_sum(const WeightSequence& capacities, std::uint64_t seed) {
  return sample_oriented_sum_parts(capacities, seed).sum;
}

MultiDigraph sample_randomly_oriented_nr(const WeightSequence& capacities, std::uint64_t seed) {
  require_mirrored(capacities);
  const auto cap = capacities.in_weights();
  const AliasTable endpoints(cap);
  // NR(2c): sum 2S, normalizer 2S, so (2S)^2 / (2 * 2S) = S expected edges.
  auto edges = poisson_pair_process(endpoints, endpoints, capacities.sum_in(), seed,
                                    StreamTag::OrientedFirst);
  const std::size_t blocks = (edges.size() + kArcBlock - 1) / kArcBlock;
  parallel_for(blocks, [&](std::size_t b) {
    CounterRng rng(seed, StreamTag::Orientation, b);
    const std::size_t hi = std::min(edges.size(), (b + 1) * kArcBlock);
    for (std::size_t i = b * kArcBlock; i < hi; ++i) {
      if (rng() >> 63) std::swap(edges[i].first, edges[i].second);
    }
  });
  return MultiDigraph::from_pairs(capacities.size(), std::move(edges));
}

IndependentSum sample_independent_sum(const MarginalLaw& out_law, const MarginalLaw& in_law,
                                      std::size_t n, std::uint64_t seed) {
  const auto model = WeightModel::independent(in_law, out_law);
  IndependentSum result;
  result.weights = sample_weights(model, n, seed);
  result.normalizer = normalizer(result.weights, moments(model).mu, NormalizerMode::DeterministicMuN);

  const auto out_w = result.weights.out_weights();
  const auto in_w = result.weights.in_weights();
  const AliasTable sources(out_w);
  const AliasTable targets(in_w);
  const double mean = result.weights.sum_out() * result.weights.sum_in() / result.normalizer;

  auto first = poisson_pair_process(sources, targets, mean, seed, StreamTag::IndependentFirst);
  std::erase_if(first, [](const auto& p) { return p.first >= p.second; });
  auto second = poisson_pair_process(sources, targets, mean, seed, StreamTag::IndependentSecond);
  std::erase_if(second, [](const auto& p) { return p.first < p.second; });

  first.insert(first.end(), second.begin(), second.end());
  result.graph = MultiDigraph::from_pairs(n, std::move(first));
  return result;
}

}  // namespace cpdigraph
