#pragma once

#include "netshift/types.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string_view>

namespace netshift {

// Deterministic, cross-platform random source. The mt19937_64 engine is
// bit-pinned by the standard; the distribution helpers below are written out
// by hand because std::uniform_real_distribution and friends are
// implementation-defined and would break reproducibility across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t u;
    do {
      u = eng_();
    } while (u >= limit);
    return u % n;
  }

  Index index(Index n) { return static_cast<Index>(below(static_cast<std::uint64_t>(n))); }

  // k distinct indices from [0, n), returned sorted (Floyd's algorithm).
  IndexVec subset(Index n, Index k) {
    IndexVec out;
    out.reserve(static_cast<std::size_t>(k));
    for (Index j = n - k; j < n; ++j) {
      Index t = index(j + 1);
      if (std::find(out.begin(), out.end(), t) != out.end()) t = j;
      out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace detail

// One master seed fans out to independent purpose-keyed streams: substream
// seeds are splitmix64 mixtures of the master seed, a purpose tag, and an
// optional index (replicate number, pair id, ...).
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view purpose,
                                    std::uint64_t k = 0) {
  std::uint64_t h = detail::splitmix64(master ^ detail::fnv1a64(purpose));
  return detail::splitmix64(h ^ detail::splitmix64(k));
}

inline Rng substream(std::uint64_t master, std::string_view purpose, std::uint64_t k = 0) {
  return Rng(substream_seed(master, purpose, k));
}

}  // namespace netshift
