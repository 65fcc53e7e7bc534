#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpdigraph {

/// Vertex ids are 0-based in memory. File formats use 1-based ids.
using Vertex = std::uint32_t;

struct Arc {
  Vertex src = 0;
  Vertex dst = 0;
  std::uint64_t mult = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Immutable directed multigraph on vertices 0..n-1. Arcs are stored as
/// a flat list sorted by (src, dst), one entry per distinct ordered pair
/// with multiplicity >= 1, indexed by source (CSR). Diagonal entries are
/// loops.
class MultiDigraph {
 public:
  MultiDigraph() = default;

  /// Builds from an arbitrary arc list: sorts, merges duplicate pairs,
  /// drops zero multiplicities. Throws on out-of-range endpoints.
  static MultiDigraph from_arcs(std::size_t n, std::vector<Arc> arcs);

  /// Builds from unit arcs (src, dst); repeated pairs accumulate.
  static MultiDigraph from_pairs(std::size_t n, std::vector<std::pair<Vertex, Vertex>> pairs);

  std::size_t n() const noexcept { return n_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  /// Distinct (src, dst) pairs leaving v.
  std::span<const Arc> out_arcs(Vertex v) const;

  std::uint64_t multiplicity(Vertex v, Vertex w) const;

  /// Sum of all multiplicities, loops included.
  std::uint64_t total_arcs() const noexcept { return total_arcs_; }
  std::uint64_t total_loops() const noexcept { return total_loops_; }
  std::size_t distinct_pairs() const noexcept { return arcs_.size(); }

  friend bool operator==(const MultiDigraph&, const MultiDigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> offsets_;
  std::uint64_t total_arcs_ = 0;
  std::uint64_t total_loops_ = 0;
};

}  // namespace cpdigraph
