#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nctopo {

// splitmix64 finalizer; used both as a stream mixer and to decorrelate
// user-supplied seeds before feeding mt19937_64.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives one substream seed from a master seed plus any number of stream
// keys (n, lambda index, replication, ...). Order-sensitive by design.
inline uint64_t mix_seed(uint64_t master, std::initializer_list<uint64_t> keys) {
  uint64_t h = splitmix64(master);
  for (uint64_t k : keys) h = splitmix64(h ^ k);
  return h;
}

// mt19937_64 with hand-rolled uniform helpers. std::uniform_*_distribution is
// avoided on purpose: its output is not pinned across standard library
// implementations, and seeds here are part of the reproducibility contract.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound) via rejection sampling; bound must be > 0.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  // Uniform in [lo, hi).
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace nctopo
