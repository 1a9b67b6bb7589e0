#pragma once

// Brute-force reference implementations for the tests. These deliberately
// use different algorithms than the library (subset DP instead of pivot
// backtracking, plain ordered enumeration instead of fail-first search) so
// that agreement actually means something.

#include <cstdint>
#include <vector>

#include "rainbow/hypergraph.hpp"
#include "rainbow/transform.hpp"

namespace oracle {

using rainbow::Edge;
using rainbow::Hypergraph;
using rainbow::RainbowFamily;

inline std::uint64_t edge_bits(const Edge& e) {
  std::uint64_t b = 0;
  for (int v : e) b |= std::uint64_t{1} << v;
  return b;
}

// dp[mask] = number of ways to cover exactly `mask`; recursion always
// extends at the lowest uncovered vertex. n <= 20.
inline std::uint64_t count_pm_subset_dp(const Hypergraph& h) {
  int n = h.vertex_count();
  if (n == 0) return 1;
  std::vector<std::uint64_t> bits;
  for (const Edge& e : h.edges()) bits.push_back(edge_bits(e));
  std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> dp(std::size_t{1} << n, 0);
  std::vector<char> seen(std::size_t{1} << n, 0);
  // iterative would need topological order; recursion depth <= n/k, fine
  struct Rec {
    std::uint64_t full;
    const std::vector<std::uint64_t>& bits;
    std::vector<std::uint64_t>& dp;
    std::vector<char>& seen;
    std::uint64_t run(std::uint64_t mask) {
      if (mask == full) return 1;
      if (seen[mask]) return dp[mask];
      seen[mask] = 1;
      int low = __builtin_ctzll(~mask);
      std::uint64_t total = 0;
      for (std::uint64_t b : bits)
        if ((b & (std::uint64_t{1} << low)) && (b & mask) == 0) total += run(mask | b);
      dp[mask] = total;
      return total;
    }
  } rec{full, bits, dp, seen};
  return rec.run(0);
}

// Memoized max matching over the free-vertex mask. n <= 20.
inline int max_matching_subset_dp(const Hypergraph& h) {
  int n = h.vertex_count();
  std::vector<std::uint64_t> bits;
  for (const Edge& e : h.edges()) bits.push_back(edge_bits(e));
  std::vector<int> memo(std::size_t{1} << n, -1);
  struct Rec {
    const std::vector<std::uint64_t>& bits;
    std::vector<int>& memo;
    int run(std::uint64_t mask) {
      int& m = memo[mask];
      if (m >= 0) return m;
      int best = 0;
      for (std::uint64_t b : bits)
        if ((b & mask) == 0) best = std::max(best, 1 + run(mask | b));
      m = best;
      return best;
    }
  } rec{bits, memo};
  return rec.run(0);
}

// Plain nested enumeration: one edge per layer in layer order, no pivoting.
inline bool has_rainbow_brute(const RainbowFamily& family) {
  struct Rec {
    const RainbowFamily& f;
    std::uint64_t used = 0;
    bool run(std::size_t layer) {
      if (layer == f.layers.size()) return true;
      for (const Edge& e : f.layers[layer].edges()) {
        std::uint64_t b = edge_bits(e);
        if (b & used) continue;
        used |= b;
        if (run(layer + 1)) return true;
        used &= ~b;
      }
      return false;
    }
  } rec{family};
  return rec.run(0);
}

}  // namespace oracle
