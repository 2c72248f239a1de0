#pragma once

#include <array>
#include <concepts>
#include <cstdint>

namespace rulplan {

/// Anything the GA operators can draw from: an unbiased integer in
/// [0, bound) and a double in [0, 1).
template <class R>
concept RandomSource = requires(R& r, std::uint64_t bound) {
  { r.below(bound) } -> std::convertible_to<std::uint64_t>;
  { r.unit() } -> std::convertible_to<double>;
};

/// xoshiro256** seeded through splitmix64.
///
/// The bit stream, `below` and `unit` are fully specified here (no
/// <random> distributions), so a seed yields the same draws on every
/// platform and standard library.
class Rng {
  __extension__ using u128 = unsigned __int128;

 public:
  explicit Rng(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      word = splitmix64(sm);
    }
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound); bound must be > 0. Lemire's
  /// multiply-and-reject, so no modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept {
    u128 m = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double unit() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi]; returns lo exactly when lo == hi.
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * unit();
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::array<std::uint64_t, 4> state_{};
};

static_assert(RandomSource<Rng>);

}  // namespace rulplan
