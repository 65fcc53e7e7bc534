#include "cpdigraph/graph_core.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cpdigraph {

std::vector<DegreeVector> degrees(const MultiDigraph& g) {
  std::vector<DegreeVector> deg(g.n());
  for (const Arc& a : g.arcs()) {
    if (a.src == a.dst) {
      deg[a.src].loops += a.mult;
    } else {
      deg[a.src].d_out += a.mult;
      deg[a.dst].d_in += a.mult;
    }
  }
  for (auto& d : deg) d.total = d.d_in + d.d_out + d.loops;
  return deg;
}

Adjacency::Adjacency(const MultiDigraph& g)
    : out_offsets_(g.n() + 1, 0), in_offsets_(g.n() + 1, 0) {
  const auto arcs = g.arcs();
  for (const Arc& a : arcs) {
    ++out_offsets_[a.src + 1];
    ++in_offsets_[a.dst + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  out_.resize(arcs.size());
  in_.resize(arcs.size());
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  // Arcs are sorted by (src, dst), so out_ is filled in order.
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    out_[i] = arcs[i].dst;
    in_[in_fill[arcs[i].dst]++] = arcs[i].src;
  }
}

namespace {

std::vector<Vertex> reach(const Adjacency& adj, Vertex start, bool forward) {
  if (start >= adj.n()) throw std::out_of_range("vertex out of range");
  std::vector<char> seen(adj.n(), 0);
  std::vector<Vertex> order{start};
  seen[start] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    for (Vertex u : forward ? adj.successors(v) : adj.predecessors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        order.push_back(u);
      }
    }
  }
  std::sort(order.begin(), order.end());
  return order;
}

/// Union-find with union by size and path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
};

std::size_t largest_cluster(const MultiDigraph& g, bool forward) {
  const Adjacency adj(g);
  const Partition scc = strong_components(adj);
  std::vector<Vertex> representative(scc.count(), 0);
  for (Vertex v = static_cast<Vertex>(g.n()); v-- > 0;) representative[scc.label[v]] = v;

  std::vector<std::uint32_t> stamp(g.n(), 0);
  std::vector<Vertex> queue;
  std::size_t best = 0;
  std::uint32_t round = 0;
  for (Vertex start : representative) {
    ++round;
    queue.assign(1, start);
    stamp[start] = round;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex u : forward ? adj.successors(queue[head]) : adj.predecessors(queue[head])) {
        if (stamp[u] != round) {
          stamp[u] = round;
          queue.push_back(u);
        }
      }
    }
    best = std::max(best, queue.size());
  }
  return best;
}

}  // namespace

std::vector<Vertex> forward_cluster(const Adjacency& adj, Vertex v) { return reach(adj, v, true); }
std::vector<Vertex> forward_cluster(const MultiDigraph& g, Vertex v) {
  return reach(Adjacency(g), v, true);
}
std::vector<Vertex> backward_cluster(const Adjacency& adj, Vertex v) { return reach(adj, v, false); }
std::vector<Vertex> backward_cluster(const MultiDigraph& g, Vertex v) {
  return reach(Adjacency(g), v, false);
}

std::size_t Partition::largest() const noexcept {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

std::uint32_t Partition::largest_label() const noexcept {
  return sizes.empty() ? 0
                       : static_cast<std::uint32_t>(
                             std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

std::vector<std::size_t> Partition::top_sizes(std::size_t k) const {
  std::vector<std::size_t> sorted = sizes;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted.size() > k) sorted.resize(k);
  return sorted;
}

Partition strong_components(const Adjacency& adj) {
  const std::size_t n = adj.n();
  constexpr std::uint32_t kUnvisited = 0xffffffffu;
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  // Explicit DFS frames: vertex and position within its successor list.
  std::vector<std::pair<Vertex, std::size_t>> frames;

  Partition p;
  p.label.assign(n, 0);
  std::uint32_t next_index = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto succ = adj.successors(v);
      if (pos < succ.size()) {
        const Vertex w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Vertex done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const Vertex parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        const auto label = static_cast<std::uint32_t>(p.sizes.size());
        std::size_t size = 0;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          p.label[w] = label;
          ++size;
        } while (w != done);
        p.sizes.push_back(size);
      }
    }
  }
  return p;
}

Partition strong_components(const MultiDigraph& g) { return strong_components(Adjacency(g)); }

Partition weak_components(const MultiDigraph& g) {
  DisjointSets sets(g.n());
  for (const Arc& a : g.arcs()) sets.unite(a.src, a.dst);

  Partition p;
  p.label.assign(g.n(), 0);
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> root_label(g.n(), kNone);
  for (Vertex v = 0; v < g.n(); ++v) {
    const Vertex r = sets.find(v);
    if (root_label[r] == kNone) {
      root_label[r] = static_cast<std::uint32_t>(p.sizes.size());
      p.sizes.push_back(0);
    }
    p.label[v] = root_label[r];
    ++p.sizes[root_label[r]];
  }
  return p;
}

ComponentSummary summarize_components(const MultiDigraph& g) {
  ComponentSummary s;
  s.strong = strong_components(g);
  s.weak = weak_components(g);
  s.largest_strong = s.strong.largest();
  s.largest_weak = s.weak.largest();
  return s;
}

std::size_t largest_forward_cluster(const MultiDigraph& g) { return largest_cluster(g, true); }
std::size_t largest_backward_cluster(const MultiDigraph& g) { return largest_cluster(g, false); }

std::size_t count_reachable(const Adjacency& adj, std::span<const Vertex> sources, bool forward) {
  std::vector<char> seen(adj.n(), 0);
  std::vector<Vertex> queue;
  for (Vertex s : sources) {
    if (s >= adj.n()) throw std::out_of_range("vertex out of range");
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex u : forward ? adj.successors(queue[head]) : adj.predecessors(queue[head])) {
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return queue.size();
}

}  // namespace cpdigraph
