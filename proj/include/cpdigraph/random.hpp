#pragma once

#include <cstdint>
#include <limits>

namespace cpdigraph {

/// Purpose tags for random streams. A stream is identified by
/// (seed, tag, index), so each consumer draws from its own sequence and
/// results never depend on evaluation order or thread count.
enum class StreamTag : std::uint64_t {
  Weights = 1,
  NaiveRow = 2,
  ArcCount = 3,
  ArcBlock = 4,
  Evolve = 5,
  OrientedFirst = 6,
  OrientedSecond = 7,
  Orientation = 8,
  IndependentFirst = 9,
  IndependentSecond = 10,
  Replicate = 11,
  Quadrature = 12,
  Bootstrap = 13,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output i is a strong hash of (key, i).
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, StreamTag tag, std::uint64_t index) noexcept
      : key_(derive_key(seed, static_cast<std::uint64_t>(tag), index)) {}

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    return splitmix64(key_ + (++counter_) * 0xd1342543de82ef95ULL);
  }

  /// Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniform_pos() noexcept { return 1.0 - uniform(); }

  std::uint64_t draws() const noexcept { return counter_; }

  static constexpr std::uint64_t derive_key(std::uint64_t seed,
                                            std::uint64_t tag,
                                            std::uint64_t index) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ tag) + index);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Poisson variate. Inversion for small means, PTRS (Hoermann 1993)
/// transformed rejection otherwise. Exact for every mean >= 0.
std::uint64_t sample_poisson(CounterRng& rng, double mean);

/// Number of successes in `trials` independent Bernoulli(p) trials.
std::uint64_t sample_binomial(CounterRng& rng, std::uint64_t trials, double p);

}  // namespace cpdigraph
