#pragma once

#include <concepts>
#include <cstdint>

namespace rcdyn {

__extension__ using uint128_t = unsigned __int128;

/// Anything the samplers can draw from.
template <class R>
concept UniformSource = requires(R& r, std::uint64_t n) {
  { r.uniform01() } -> std::convertible_to<double>;
  { r.below(n) } -> std::convertible_to<std::uint64_t>;
};

/// Counter-based generator: draw i is splitmix64(key + i * golden), where key is
/// the mixed seed. Output depends only on (seed, draw count), so identical
/// seeds give identical streams on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed), key_(mix(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  std::uint64_t next() noexcept { return mix(key_ + (counter_++ + 1) * kGolden); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [0, n) by multiply-shift with rejection (unbiased). n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept {
    uint128_t m = static_cast<uint128_t>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<uint128_t>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

static_assert(UniformSource<CounterRng>);

}  // namespace rcdyn
