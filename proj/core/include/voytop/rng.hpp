#ifndef VOYTOP_RNG_HPP
#define VOYTOP_RNG_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace voytop {

// SplitMix64: fixed, portable 64-bit generator. All sampling in the
// toolkit goes through this class so that seeded runs reproduce
// bit-for-bit across platforms and standard libraries (the std::
// distributions are implementation-defined and therefore avoided).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection, bias-free.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// FNV-1a 64-bit, used for per-page seed derivation and file checksums.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Derives an independent stream seed from a global seed and a string
// key (e.g. a page id), so per-page sampling is order-independent.
inline std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view key) {
  std::uint64_t h = fnv1a64(key);
  return SplitMix64(global_seed ^ h).next_u64();
}

}  // namespace voytop

#endif  // VOYTOP_RNG_HPP
