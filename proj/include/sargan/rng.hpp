#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sargan {

/// 64-bit FNV-1a over a byte string.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// SplitMix64 finalizer, used to whiten derived seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Counter-based sub-stream derivation: a master seed expands into named,
/// independent streams ("scene", "mask-train", "mask-test", "init",
/// "shuffle", ...), each further indexed by a counter. Two streams with
/// different names or counters never share a seed in practice.
///
///   sub_seed = splitmix64( splitmix64(master ^ fnv1a64(name)) + counter )
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stream,
                                    std::uint64_t counter = 0) {
  return splitmix64(splitmix64(master ^ fnv1a64(stream)) + counter);
}

/// Deterministic random source. std::mt19937_64 output is fully specified by
/// the standard; the floating-point mappings below are explicit because
/// std::uniform_real_distribution is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits of mantissa.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  /// Uniform index in [0, n). Modulo bias is negligible for n << 2^64.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(next_u64() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates with explicit index draws; std::shuffle is
/// implementation-defined and would break cross-platform reproducibility.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace sargan
