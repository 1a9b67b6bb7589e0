#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

// Deterministic 64-bit generator (splitmix64). Unlike <random> distributions,
// the streams are identical on every platform, which the reproducibility
// contracts rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection, n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  int below_int(int n) { return (int)below((std::uint64_t)n); }

  double unit() { return (double)(next_u64() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  // Independent child stream; same (seed, tag) always gives the same stream.
  Rng derive(std::uint64_t tag) const {
    Rng mix(state_ ^ (tag * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    return Rng(mix.next_u64());
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below((std::uint64_t)i)]);
  }

  // Sorted sample of `count` distinct values from [0, n).
  std::vector<int> sample_distinct(int n, int count);

  // Sample of `count` distinct elements of `pool`, in sampled order.
  std::vector<int> sample_from(const std::vector<int>& pool, int count);

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);

}  // namespace rainbow
