#include "cpdigraph/multidigraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cpdigraph {

MultiDigraph MultiDigraph::from_arcs(std::size_t n, std::vector<Arc> arcs) {
  for (const Arc& a : arcs) {
    if (a.src >= n || a.dst >= n) {
      throw std::out_of_range("arc (" + std::to_string(a.src) + ", " + std::to_string(a.dst) +
                              ") outside vertex range of size " + std::to_string(n));
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  MultiDigraph g;
  g.n_ = n;
  g.arcs_.reserve(arcs.size());
  for (const Arc& a : arcs) {
    if (a.mult == 0) continue;
    if (!g.arcs_.empty() && g.arcs_.back().src == a.src && g.arcs_.back().dst == a.dst) {
      g.arcs_.back().mult += a.mult;
    } else {
      g.arcs_.push_back(a);
    }
  }
  g.arcs_.shrink_to_fit();

  g.offsets_.assign(n + 1, 0);
  for (const Arc& a : g.arcs_) {
    ++g.offsets_[a.src + 1];
    g.total_arcs_ += a.mult;
    if (a.src == a.dst) g.total_loops_ += a.mult;
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];
  return g;
}

MultiDigraph MultiDigraph::from_pairs(std::size_t n,
                                      std::vector<std::pair<Vertex, Vertex>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<Arc> arcs;
  for (const auto& [s, d] : pairs) {
    if (!arcs.empty() && arcs.back().src == s && arcs.back().dst == d) {
      ++arcs.back().mult;
    } else {
      arcs.push_back({s, d, 1});
    }
  }
  return from_arcs(n, std::move(arcs));
}

std::span<const Arc> MultiDigraph::out_arcs(Vertex v) const {
  if (v >= n_) throw std::out_of_range("vertex out of range");
  return std::span<const Arc>(arcs_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::uint64_t MultiDigraph::multiplicity(Vertex v, Vertex w) const {
  if (w >= n_) throw std::out_of_range("vertex out of range");
  const auto row = out_arcs(v);
  const auto it = std::lower_bound(row.begin(), row.end(), w,
                                   [](const Arc& a, Vertex t) { return a.dst < t; });
  return (it != row.end() && it->dst == w) ? it->mult : 0;
}

}  // namespace cpdigraph
