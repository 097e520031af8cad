#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace isd {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Satisfies
/// UniformRandomBitGenerator. Word 0 of the counter advances per block; words
/// 1-3 select the substream.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(Key key, Counter counter) noexcept : key_(key), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (used_ == 4) {
      block_ = bijection(counter_, key_);
      ++counter_[0];
      used_ = 0;
    }
    return block_[used_++];
  }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() noexcept {
    const std::uint64_t hi = (*this)() >> 5;
    const std::uint64_t lo = (*this)() >> 6;
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound), bound >= 1 (Lemire's method).
  std::uint32_t below(std::uint32_t bound) noexcept {
    std::uint64_t m = static_cast<std::uint64_t>((*this)()) * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (low < threshold) {
        m = static_cast<std::uint64_t>((*this)()) * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  static Counter bijection(Counter ctr, Key key) noexcept;

 private:
  Key key_;
  Counter counter_;
  Counter block_{};
  int used_ = 4;
};

/// Purposes that partition one replication's randomness.
enum class StreamPurpose : std::uint32_t { FirstSample = 0, SecondSample = 1, FirstWeights = 2, SecondWeights = 3 };

/// Master seed plus keyed substreams. The engine for a given
/// (family, replication, purpose) is a pure function of the seed, so results
/// do not depend on scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  Philox4x32 substream(std::uint32_t family, std::uint32_t replication, StreamPurpose purpose) const noexcept {
    return Philox4x32({static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)},
                      {0u, static_cast<std::uint32_t>(purpose), replication, family});
  }

  /// A derived 64-bit seed, for nesting a whole test inside a replication.
  std::uint64_t derive(std::uint32_t family, std::uint32_t replication) const noexcept;

 private:
  std::uint64_t seed_;
};

}  // namespace isd
