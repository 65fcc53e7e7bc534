#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpdigraph/multidigraph.hpp"

namespace cpdigraph {

/// Per-vertex degrees. Loops are excluded from d_in and d_out and counted
/// once in total.
struct DegreeVector {
  std::uint64_t d_in = 0;
  std::uint64_t d_out = 0;
  std::uint64_t loops = 0;
  std::uint64_t total = 0;

  friend bool operator==(const DegreeVector&, const DegreeVector&) = default;
};

std::vector<DegreeVector> degrees(const MultiDigraph& g);

/// Arc support (multiplicities dropped) in both directions.
class Adjacency {
 public:
  explicit Adjacency(const MultiDigraph& g);

  std::size_t n() const noexcept { return out_offsets_.size() - 1; }
  std::span<const Vertex> successors(Vertex v) const {
    return std::span<const Vertex>(out_).subspan(out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]);
  }
  std::span<const Vertex> predecessors(Vertex v) const {
    return std::span<const Vertex>(in_).subspan(in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]);
  }

 private:
  std::vector<std::size_t> out_offsets_;
  std::vector<Vertex> out_;
  std::vector<std::size_t> in_offsets_;
  std::vector<Vertex> in_;
};

/// Vertices reachable from v along arcs, v included. Sorted ascending.
std::vector<Vertex> forward_cluster(const Adjacency& adj, Vertex v);
std::vector<Vertex> forward_cluster(const MultiDigraph& g, Vertex v);
/// Vertices from which v is reachable, v included. Sorted ascending.
std::vector<Vertex> backward_cluster(const Adjacency& adj, Vertex v);
std::vector<Vertex> backward_cluster(const MultiDigraph& g, Vertex v);

/// Labels 0..count-1 for each vertex plus class sizes.
struct Partition {
  std::vector<std::uint32_t> label;
  std::vector<std::size_t> sizes;

  std::size_t count() const noexcept { return sizes.size(); }
  std::size_t largest() const noexcept;
  /// Label of a largest class (smallest label among ties).
  std::uint32_t largest_label() const noexcept;
  /// Class sizes in non-increasing order, at most k of them.
  std::vector<std::size_t> top_sizes(std::size_t k) const;
};

/// Tarjan's algorithm, iterative. Labels are assigned in order of
/// completion (reverse topological order of the condensation).
Partition strong_components(const MultiDigraph& g);
Partition strong_components(const Adjacency& adj);

/// Components after dropping arc directions.
Partition weak_components(const MultiDigraph& g);

struct ComponentSummary {
  Partition strong;
  Partition weak;
  std::size_t largest_strong = 0;
  std::size_t largest_weak = 0;
};

ComponentSummary summarize_components(const MultiDigraph& g);

/// max_v |F[v]|. One search per strongly connected class, so the cost is
/// the sum of forward-cluster sizes; intended for sparse near-critical
/// graphs.
std::size_t largest_forward_cluster(const MultiDigraph& g);
std::size_t largest_backward_cluster(const MultiDigraph& g);

/// Number of vertices reachable from (forward) or reaching (backward) any
/// vertex in the source set.
std::size_t count_reachable(const Adjacency& adj, std::span<const Vertex> sources, bool forward);

}  // namespace cpdigraph
