#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace egodist {

/// SplitMix64 finalizer; used to derive keys and seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b + 0x632BE59BD9B4E019ull));
}

/// Raw Philox4x32 block function, 10 rounds.
constexpr std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                                     std::array<std::uint32_t, 2> k) noexcept {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
    k[0] += 0x9E3779B9u;
    k[1] += 0xBB67AE85u;
  }
  return c;
}

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream
/// is identified by its 64-bit key; independent streams come from split().
/// Satisfies UniformRandomBitGenerator with 32-bit output.
class Philox {
 public:
  using result_type = std::uint32_t;

  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_{hash_combine(seed, stream)} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Child stream keyed from this stream's key and `id`; the parent is not advanced.
  Philox split(std::uint64_t id) const noexcept { return Philox(key_, id); }

  result_type operator()() noexcept {
    if (lane_ == 4) {
      block_ = round10(counter_++);
      lane_ = 0;
    }
    return block_[lane_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t hi = (*this)();
    return (hi << 32) | (*this)();
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1): never exactly 0 or 1.
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0 (Lemire's nearly-divisionless method).
  std::uint64_t below(std::uint64_t n) noexcept {
    if (n <= (std::uint64_t{1} << 32)) {
      std::uint64_t m = std::uint64_t{(*this)()} * n;
      auto low = static_cast<std::uint32_t>(m);
      if (low < n) {
        const auto threshold = static_cast<std::uint32_t>((std::uint64_t{1} << 32) % n);
        while (low < threshold) {
          m = std::uint64_t{(*this)()} * n;
          low = static_cast<std::uint32_t>(m);
        }
      }
      return m >> 32;
    }
    // Rare wide case: rejection on 64-bit draws.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = next_u64();
    while (x >= limit);
    return x % n;
  }

  /// Exponential with mean 1; strictly positive.
  double exponential() noexcept { return -std::log(uniform_open()); }

 private:
  using Block = std::array<std::uint32_t, 4>;

  Block round10(std::uint64_t counter) const noexcept {
    return philox4x32_10({static_cast<std::uint32_t>(counter),
                          static_cast<std::uint32_t>(counter >> 32), 0u, 0u},
                         {static_cast<std::uint32_t>(key_), static_cast<std::uint32_t>(key_ >> 32)});
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  Block block_{};
  int lane_ = 4;
};

}  // namespace egodist
