#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpdigraph/random.hpp"

namespace cpdigraph {

/// Walker/Vose alias table over indices 0..n-1 with probabilities
/// proportional to the given nonnegative weights. O(n) build, O(1) draw.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights);

  std::uint32_t sample(CounterRng& rng) const noexcept {
    const double scaled = rng.uniform() * static_cast<double>(prob_.size());
    auto slot = static_cast<std::size_t>(scaled);
    if (slot >= prob_.size()) slot = prob_.size() - 1;
    return (scaled - static_cast<double>(slot)) < prob_[slot] ? static_cast<std::uint32_t>(slot)
                                                              : alias_[slot];
  }

  std::size_t size() const noexcept { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace cpdigraph
