#pragma once

#include <cstdint>
#include <limits>

namespace tcm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derive an independent key from a parent key and a label.
inline std::uint64_t derive_key(std::uint64_t key, std::uint64_t label) {
  return splitmix64(key ^ splitmix64(label + 0x632be59bd9b4e019ULL));
}

/// Counter-based generator: output i is a hash of (key, i). Satisfies
/// UniformRandomBitGenerator, so it plugs into the <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(derive_key(seed, stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return splitmix64(key_ + splitmix64(counter_++)); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace tcm
