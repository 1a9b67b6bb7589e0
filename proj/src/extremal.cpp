#include "rainbow/extremal.hpp"

#include <algorithm>
#include <numeric>

#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"

namespace rainbow {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

bool VertexPartition::obstructed() const { return ext_obstructed(n, k, a_size(), i); }

bool ext_obstructed(int n, int k, int a_size, int i) {
  if (k < 2 || n % k != 0) throw contract_error("ext membership needs k >= 2 and k | n");
  if (a_size < 0 || a_size > n) throw contract_error("ext membership: |A| out of range");
  if (i != 0 && i != 1) throw contract_error("ext membership: parity bit must be 0 or 1");
  return ((i * (n / k)) & 1) != (a_size & 1);
}

Hypergraph build_parity_hypergraph(int n, int k, const std::vector<int>& a, int i) {
  if (n < k) throw contract_error("parity hypergraph needs n >= k");
  if (i != 0 && i != 1) throw contract_error("parity bit must be 0 or 1");
  std::vector<int> sorted_a = canonical_vertex_set(a, n, "parity hypergraph A");
  std::vector<char> in_a((std::size_t)n, 0);
  for (int v : sorted_a) in_a[(std::size_t)v] = 1;
  std::vector<Edge> edges;
  for_each_k_subset(n, k, [&](const Edge& e) {
    int hits = 0;
    for (int v : e) hits += in_a[(std::size_t)v];
    if ((hits & 1) == i) edges.push_back(e);
  });
  return Hypergraph(n, k, std::move(edges));
}

long long parity_edge_count(int n, int k, int a_size, int i) {
  if (n < k) throw contract_error("parity edge count needs n >= k");
  if (a_size < 0 || a_size > n) throw contract_error("parity edge count: |A| out of range");
  long long total = 0;
  for (int j = i & 1; j <= k; j += 2) total += binomial(a_size, j) * binomial(n - a_size, k - j);
  return total;
}

std::vector<VertexPartition> enumerate_ext(int n, int k) {
  if (k < 2 || n <= 0 || n % k != 0) throw contract_error("ext enumeration needs k >= 2 and k | n");
  std::vector<VertexPartition> out;
  for (int i = 0; i <= 1; ++i) {
    for (int size = 0; size <= n; ++size) {
      if (!ext_obstructed(n, k, size, i)) continue;
      for_each_k_subset(n, size, [&](const std::vector<int>& a) {
        out.push_back({n, k, a, i});
      });
    }
  }
  return out;
}

// deg(S) in the pattern for |S ∩ A| = s: extensions T of size k-l with
// |T ∩ A| ≡ i - s (mod 2), drawn from the n-l vertices outside S.
static long long pattern_degree(int n, int k, int a_size, int i, int l, int s) {
  int free_a = a_size - s;
  int free_b = (n - a_size) - (l - s);
  long long d = 0;
  for (int j = 0; j <= k - l; ++j) {
    if (((j + s) & 1) != i) continue;
    d += binomial(free_a, j) * binomial(free_b, (k - l) - j);
  }
  return d;
}

long long pattern_min_degree(int n, int k, int a_size, int i, int l) {
  if (l < 0 || l >= k) throw contract_error("pattern degree needs 0 <= l < k");
  if (n < k) throw contract_error("pattern degree needs n >= k");
  long long best = -1;
  for (int s = 0; s <= l; ++s) {
    if (s > a_size || l - s > n - a_size) continue;
    long long d = pattern_degree(n, k, a_size, i, l, s);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

static std::vector<int> prefix_set(int size) {
  std::vector<int> a((std::size_t)size);
  std::iota(a.begin(), a.end(), 0);
  return a;
}

ThresholdReport delta_threshold(int n, int k, int l, long long budget) {
  if (k < 2 || n <= 0 || n % k != 0) throw contract_error("delta threshold needs k >= 2 and k | n");
  if (l < 0 || l >= k) throw contract_error("delta threshold needs 0 <= l <= k-1");
  ThresholdReport report{n, k, l, -1, {}, "enumeration"};
  long long ops = 0;
  for (int i = 0; i <= 1; ++i) {
    for (int size = 0; size <= n; ++size) {
      if (!ext_obstructed(n, k, size, i)) continue;
      std::vector<int> a = prefix_set(size);
      Hypergraph h = build_parity_hypergraph(n, k, a, i);
      long long min_deg = h.edge_count();
      if (l > 0) {
        bool done = false;
        for_each_k_subset(n, l, [&](const std::vector<int>& s) {
          if (done) return;
          ops += (long long)h.incident(s[0]).size();
          if (ops > budget) {
            resource_error err("degree threshold enumeration ran out of budget");
            err.partial = report.value;
            throw err;
          }
          long long d = h.degree(s);
          if (d < min_deg) min_deg = d;
          if (min_deg == 0) done = true;  // cannot go lower
        });
      }
      if (min_deg > report.value) {
        report.value = min_deg;
        report.witness = {n, k, a, i};
      }
    }
  }
  return report;
}

HalfInt delta_codegree_formula(int n, int k) {
  if (k < 3 || n % k != 0 || n < k) throw contract_error("codegree formula needs k >= 3 and k | n");
  if (k % 2 == 0 && (k / 2) % 2 == 0 && (n / k) % 2 == 1) return HalfInt::halves(n - 2 * k + 4);
  if (k % 2 == 1 && n % 2 == 1) {
    if (((n - 1) / 2) % 2 == 1) return HalfInt::halves(n - 2 * k + 3);
    return HalfInt::halves(n - 2 * k + 1);
  }
  return HalfInt::halves(n - 2 * k + 2);
}

VertexPartition canonical_extremal_pattern(int n, int k) {
  if (k < 2 || n <= 0 || n % k != 0) throw contract_error("extremal pattern needs k >= 2 and k | n");
  int best_size = -1, best_i = 0;
  long long best_deg = -1;
  int best_imbalance = n + 1;
  for (int size = 0; size <= n; ++size) {
    int imbalance = std::abs(2 * size - n);
    for (int i = 0; i <= 1; ++i) {
      if (!ext_obstructed(n, k, size, i)) continue;
      long long deg = pattern_min_degree(n, k, size, i, k - 1);
      bool better = false;
      if (imbalance != best_imbalance) better = imbalance < best_imbalance;
      else if (deg != best_deg) better = deg > best_deg;
      else if (i != best_i) better = i < best_i;
      else better = size < best_size;
      if (better) {
        best_imbalance = imbalance;
        best_deg = deg;
        best_i = i;
        best_size = size;
      }
    }
  }
  return {n, k, prefix_set(best_size), best_i};
}

Hypergraph build_extremal_hypergraph(int n, int k) {
  VertexPartition p = canonical_extremal_pattern(n, k);
  return build_parity_hypergraph(n, k, p.a, p.i);
}

ColoredGraph build_T_ext(int n, int k) {
  Hypergraph layer = build_extremal_hypergraph(n, k);
  std::vector<Hypergraph> layers((std::size_t)(n / k), layer);
  return build_rainbow_graph(RainbowFamily(n, k, std::move(layers)));
}

}  // namespace rainbow
