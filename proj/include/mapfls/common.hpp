#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapfls {

using VertexId = int;

// Hop-count distance. kUnreachable is the only sentinel; arithmetic on
// distances must go through dist_add so the sentinel is never summed.
using Dist = long long;
inline constexpr Dist kUnreachable = std::numeric_limits<Dist>::max();

inline Dist dist_add(Dist a, Dist b) {
  if (a == kUnreachable || b == kUnreachable) return kUnreachable;
  return a + b;
}

inline Dist dist_min(Dist a, Dist b) { return a < b ? a : b; }

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so results depend only on the seed, not on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n > 0
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps the draw unbiased
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  int int_below(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // derive an independent stream for a sub-task
  std::uint64_t fork(std::uint64_t salt) {
    Rng child(state_ ^ (0x517cc1b727220a95ULL * (salt + 1)));
    return child.next();
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

inline void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

inline std::size_t hash_ints(const std::vector<int>& v, std::size_t seed = 0) {
  std::size_t h = seed;
  for (int x : v) hash_mix(h, std::hash<int>{}(static_cast<int>(x)));
  return h;
}

}  // namespace mapfls
