#include "rainbow/closeness.hpp"

#include <algorithm>

#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

bool check_parity(long long a_size, long long x_size, int i) {
  if (i != 0 && i != 1) throw contract_error("parity bit must be 0 or 1");
  return ((i * x_size) & 1) == (a_size & 1);
}

namespace {

long long power_ll(long long base, int exp) {
  long long r = 1;
  for (int e = 0; e < exp; ++e) {
    if (r > (long long)4e18 / base) throw resource_error("closeness denominator overflow");
    r *= base;
  }
  return r;
}

// Tracks |T ∩ pattern(A, i)| under single-vertex swaps of A.
struct CommonCounter {
  const ColoredGraph& t;
  int parity;
  std::vector<int> hits;                    // per edge: |base ∩ A|
  std::vector<std::vector<int>> incident;   // base vertex -> edge ids
  long long common = 0;

  CommonCounter(const ColoredGraph& t_, int i) : t(t_), parity(i) {
    hits.assign(t.edges().size(), 0);
    incident.assign((std::size_t)t.base_count(), {});
    for (std::size_t id = 0; id < t.edges().size(); ++id)
      for (int v : t.edges()[id].base) incident[(std::size_t)v].push_back((int)id);
  }

  void reset(const std::vector<char>& in_a) {
    common = 0;
    for (std::size_t id = 0; id < t.edges().size(); ++id) {
      int h = 0;
      for (int v : t.edges()[id].base) h += in_a[(std::size_t)v];
      hits[id] = h;
      if ((h & 1) == parity) ++common;
    }
  }

  void bump(int v, int delta) {
    for (int id : incident[(std::size_t)v]) {
      if ((hits[(std::size_t)id] & 1) == parity) --common;
      hits[(std::size_t)id] += delta;
      if ((hits[(std::size_t)id] & 1) == parity) ++common;
    }
  }

  void swap_in_out(int in, int out) {
    bump(in, +1);
    bump(out, -1);
  }
};

long long edits_from_common(const ColoredGraph& t, int a_size, int i, long long common) {
  long long pattern_edges = (long long)t.color_count() * parity_edge_count(t.base_count(), t.arity(), a_size, i);
  return (pattern_edges - common) + (t.edge_count() - common);
}

std::vector<std::pair<int, int>> candidate_classes(int n, int k) {
  int best_imbalance = n + 1;
  for (int size = 0; size <= n; ++size)
    for (int i = 0; i <= 1; ++i)
      if (ext_obstructed(n, k, size, i)) best_imbalance = std::min(best_imbalance, std::abs(2 * size - n));
  std::vector<std::pair<int, int>> out;
  for (int size = 0; size <= n; ++size)
    for (int i = 0; i <= 1; ++i)
      if (ext_obstructed(n, k, size, i) && std::abs(2 * size - n) == best_imbalance)
        out.push_back({size, i});
  return out;
}

}  // namespace

ClosenessReport closeness_to_ext(const ColoredGraph& t, bool exact, int samples, std::uint64_t seed) {
  int n = t.base_count();
  int k = t.arity();
  if (n <= 0 || n % k != 0) throw contract_error("closeness needs a valid colored graph with k | n");

  ClosenessReport report;
  report.denominator = power_ll(n + t.color_count(), k + 1);
  report.exact = exact;
  report.edits = -1;

  auto consider = [&](const std::vector<int>& a, int i, long long common) {
    long long e = edits_from_common(t, (int)a.size(), i, common);
    if (report.edits < 0 || e < report.edits) {
      report.edits = e;
      report.witness = {n, k, a, i};
    }
  };

  for (auto [size, i] : candidate_classes(n, k)) {
    CommonCounter counter(t, i);
    std::vector<char> in_a((std::size_t)n, 0);
    if (exact) {
      if (binomial(n, size) > 2'000'000)
        throw contract_error("exact closeness search too large; use sampled mode");
      for_each_k_subset(n, size, [&](const std::vector<int>& a) {
        std::fill(in_a.begin(), in_a.end(), 0);
        for (int v : a) in_a[(std::size_t)v] = 1;
        counter.reset(in_a);
        consider(a, i, counter.common);
      });
      continue;
    }

    Rng rng = Rng(seed).derive(((std::uint64_t)size << 1) | (std::uint64_t)i);
    std::vector<int> best_a;
    long long best_edits = -1;
    for (int trial = 0; trial < samples; ++trial) {
      std::vector<int> a = rng.sample_distinct(n, size);
      std::fill(in_a.begin(), in_a.end(), 0);
      for (int v : a) in_a[(std::size_t)v] = 1;
      counter.reset(in_a);
      long long e = edits_from_common(t, size, i, counter.common);
      if (best_edits < 0 || e < best_edits) {
        best_edits = e;
        best_a = a;
      }
    }
    if (best_a.empty() && size != 0) continue;

    // first-fit vertex swap descent from the best sample
    std::fill(in_a.begin(), in_a.end(), 0);
    for (int v : best_a) in_a[(std::size_t)v] = 1;
    counter.reset(in_a);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int out = 0; out < n && !improved; ++out) {
        if (!in_a[(std::size_t)out]) continue;
        for (int in = 0; in < n && !improved; ++in) {
          if (in_a[(std::size_t)in]) continue;
          counter.swap_in_out(in, out);
          long long e = edits_from_common(t, size, i, counter.common);
          if (e < best_edits) {
            best_edits = e;
            in_a[(std::size_t)out] = 0;
            in_a[(std::size_t)in] = 1;
            improved = true;
          } else {
            counter.swap_in_out(out, in);
          }
        }
      }
    }
    std::vector<int> a;
    for (int v = 0; v < n; ++v)
      if (in_a[(std::size_t)v]) a.push_back(v);
    consider(a, i, counter.common);
  }
  return report;
}

GoodnessReport good_vertices(const Hypergraph& q, const Hypergraph& q_ref, double alpha) {
  if (q.vertex_count() != q_ref.vertex_count() || q.arity() != q_ref.arity())
    throw contract_error("goodness needs both graphs on the same vertex set and arity");
  if (alpha < 0) throw contract_error("goodness threshold must be nonnegative");
  int n = q.vertex_count();
  int r = q.arity();
  GoodnessReport report;
  report.alpha = alpha;
  report.reference_threshold = binomial(n - 1, r - 1);
  std::vector<long long> missing((std::size_t)n, 0);
  for (const Edge& e : q_ref.edges()) {
    if (q.contains(e)) continue;
    for (int v : e) ++missing[(std::size_t)v];
  }
  for (int v = 0; v < n; ++v)
    if ((double)missing[(std::size_t)v] > alpha * (double)report.reference_threshold)
      report.bad.push_back(v);
  return report;
}

}  // namespace rainbow
