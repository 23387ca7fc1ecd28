#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

#include "covertorus/numeric.hpp"

namespace covertorus {

/// 64-bit FNV-1a.
std::uint64_t hash_name(std::string_view s);

/// SplitMix64 stepping from a key derived from (seed, stream, index), so
/// any trial's generator can be rebuilt without replaying earlier ones.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return below(2) == 1; }
  /// a/b with a in [-num, num], b in [1, den].
  Rational rational(int num, int den);

 private:
  std::uint64_t state_;
};

}  // namespace covertorus
