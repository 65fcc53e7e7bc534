#pragma once

#include <cstdint>

#include "cpdigraph/multidigraph.hpp"
#include "cpdigraph/weights.hpp"

namespace cpdigraph {

inline constexpr std::size_t kNaiveSamplerMaxN = 10'000;

/// Reference sampler: one independent Poisson(w_out_v * w_in_w / L) draw
/// per ordered pair, loops included. O(N^2); refuses N > max_n.
MultiDigraph sample_graph_naive(const WeightSequence& w, double normalizer, std::uint64_t seed,
                                std::size_t max_n = kNaiveSamplerMaxN);

/// Same law as sample_graph_naive in O(N + K): K ~ Poisson(S_out S_in / L)
/// arcs, each with source ~ w_out and target ~ w_in drawn independently.
MultiDigraph sample_graph_fast(const WeightSequence& w, double normalizer, std::uint64_t seed);

/// Graph at size N+1 from a graph at size N: every arc survives
/// independently with probability L_N / L_{N+1}, then vertex N+1 (0-based
/// index N) receives its in/out arcs and loop at normalizer L_{N+1}.
MultiDigraph evolve(const MultiDigraph& g, const WeightSequence& w, double normalizer_n,
                    double normalizer_next, std::uint64_t seed);

struct OrientedSum {
  MultiDigraph first;   ///< NR(capacity) edges oriented toward the higher index
  MultiDigraph second;  ///< independent NR(capacity) edges oriented toward the lower index
  MultiDigraph sum;
};

/// Sum of two independent Norros-Reittu multigraphs on the capacities
/// (w_in = w_out = capacity), normalizer = sum of capacities. Each
/// constituent carries Poisson(c_v c_w / L) edges per unordered pair and
/// Poisson(c_v^2 / 2L) loops.
OrientedSum sample_oriented_sum_parts(const WeightSequence& capacities, std::uint64_t seed);
MultiDigraph sample_oriented_sum(const WeightSequence& capacities, std::uint64_t seed);

/// NR multigraph with doubled capacities, each edge given a fair-coin
/// orientation.
MultiDigraph sample_randomly_oriented_nr(const WeightSequence& capacities, std::uint64_t seed);

struct IndependentSum {
  WeightSequence weights;  ///< w_out from the first law, w_in from the second
  double normalizer = 0.0;
  MultiDigraph graph;
};

/// Upward arcs (src < dst) and downward arcs plus loops drawn as two
/// independent graphs and summed; normalizer mu * N.
IndependentSum sample_independent_sum(const MarginalLaw& out_law, const MarginalLaw& in_law,
                                      std::size_t n, std::uint64_t seed);

}  // namespace cpdigraph
