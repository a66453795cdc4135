#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hypolink {

/// 64-bit FNV-1a over a byte sequence. Used for seed derivation and for the
/// input digests recorded in run manifests. Not cryptographic.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Derives a stage-specific seed from a root seed so that every pipeline
/// stage draws from an independent, reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((root >> (8 * i)) & 0xff);
  std::uint64_t h = fnv1a64(std::string_view(buf, 8));
  h = fnv1a64(stage, h);
  // splitmix64 finalizer to spread low-entropy tags
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

/// Seeded generator with explicit draw helpers. The helpers avoid
/// std::uniform_*_distribution so that streams are identical across
/// standard library implementations.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 bits of precision.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). Requires n >= 1.
  std::size_t uniform_index(std::size_t n) {
    // modulo bias is negligible for n << 2^64 and keeps the stream portable
    return static_cast<std::size_t>(engine_() % n);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Samples an index from a cumulative weight table (strictly increasing,
  /// last entry = total mass).
  std::size_t sample_cumulative(const std::vector<double>& cumulative) {
    double u = uniform() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypolink
