#pragma once

#include <string>
#include <vector>

#include "rainbow/hypergraph.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

/// Exact half-integral value, stored as twice the value. The degree
/// thresholds use strict comparisons, so no rounding ever happens.
struct HalfInt {
  long long twice = 0;

  static HalfInt whole(long long v) { return {2 * v}; }
  static HalfInt halves(long long t) { return {t}; }

  friend auto operator<=>(const HalfInt&, const HalfInt&) = default;

  bool is_integer() const { return twice % 2 == 0; }
  double to_double() const { return 0.5 * (double)twice; }
  std::string str() const;
};

/// A parity pattern (A, i) on [0, n): the hypergraph of all k-sets meeting
/// A in ≡ i (mod 2) vertices. B is implicitly the complement of A.
struct VertexPartition {
  int n = 0;
  int k = 2;
  std::vector<int> a;
  int i = 0;

  int a_size() const { return (int)a.size(); }
  /// True when i*(n/k) and |A| have different parities, which forbids a
  /// perfect matching: summing |E ∩ A| over a hypothetical matching gives
  /// i*(n/k) ≡ |A| (mod 2).
  bool obstructed() const;
};

Hypergraph build_parity_hypergraph(int n, int k, const std::vector<int>& a, int i);

/// |H^i(A,B)| by the split-by-intersection formula, no construction.
long long parity_edge_count(int n, int k, int a_size, int i);

bool ext_obstructed(int n, int k, int a_size, int i);

/// Every (A, i) with the parity obstruction. Requires k | n.
std::vector<VertexPartition> enumerate_ext(int n, int k);

/// Minimum l-degree of the pattern by the closed form: deg(S) depends only
/// on |S ∩ A|, so the minimum runs over that one parameter.
long long pattern_min_degree(int n, int k, int a_size, int i, int l);

struct ThresholdReport {
  int n = 0;
  int k = 0;
  int l = 0;
  long long value = 0;
  VertexPartition witness;
  std::string method;  // "enumeration" or "formula"
};

/// max over the obstructed patterns of the minimum l-degree, computed by
/// definitional enumeration on one representative A per size. The budget
/// counts edge scans; exceeding it raises resource_error carrying the
/// partial maximum.
ThresholdReport delta_threshold(int n, int k, int l, long long budget = 100'000'000);

/// Four-case closed form for the codegree threshold (l = k-1).
HalfInt delta_codegree_formula(int n, int k);

/// The canonical worst pattern: among obstructed (|A|, i) of minimal
/// imbalance |2|A| - n|, the one with the largest codegree, ties broken by
/// smaller i, then smaller |A|; A = {0, ..., |A|-1}.
VertexPartition canonical_extremal_pattern(int n, int k);

Hypergraph build_extremal_hypergraph(int n, int k);

/// n/k identical canonical extremal layers, wrapped as a colored graph.
ColoredGraph build_T_ext(int n, int k);

}  // namespace rainbow
