#pragma once

#include <string>
#include <vector>

namespace rainbow {

/// A hyperedge: sorted, strictly increasing vertex indices.
using Edge = std::vector<int>;

/// k-uniform hypergraph on vertex set {0, ..., n-1}.
///
/// Immutable after construction. Edges are stored in lexicographic order with
/// no duplicates; the per-vertex incidence index is built eagerly so that all
/// accessors are safe to share across threads.
class Hypergraph {
 public:
  Hypergraph() : n_(0), k_(2) {}

  /// Validates and canonicalizes: sorts each edge, rejects repeated vertices,
  /// out-of-range indices, wrong arity and duplicate edges.
  Hypergraph(int n, int k, std::vector<Edge> edges);

  static Hypergraph complete(int n, int k);
  static Hypergraph empty(int n, int k);

  int vertex_count() const { return n_; }
  int arity() const { return k_; }
  const std::vector<Edge>& edges() const { return edges_; }
  long long edge_count() const { return (long long)edges_.size(); }

  bool contains(const Edge& e) const;

  /// Ids (positions in edges()) of the edges containing v.
  const std::vector<int>& incident(int v) const;

  /// Number of edges containing every vertex of S, |S| <= k.
  long long degree(const std::vector<int>& s) const;

  /// Link of S: all T with S + T an edge, returned as sorted (k-|S|)-sets.
  /// Requires 0 < |S| < k.
  std::vector<Edge> link(const std::vector<int>& s) const;

  /// Minimum l-degree over all l-subsets of the vertex set, 0 <= l <= k-1.
  long long min_degree(int l) const;

  Hypergraph complement() const;

  bool operator==(const Hypergraph& other) const = default;

 private:
  int n_;
  int k_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incidence_;
};

/// Subgraph together with the order-preserving relabeling that produced it;
/// new vertex j corresponds to original vertex to_original[j].
struct InducedSubgraph {
  Hypergraph graph;
  std::vector<int> to_original;
};

/// Edges fully inside A, relabeled onto {0, ..., |A|-1}.
InducedSubgraph restrict_to(const Hypergraph& h, const std::vector<int>& a);

/// Edges avoiding every vertex of A, relabeled the same way.
InducedSubgraph remove_vertices(const Hypergraph& h, const std::vector<int>& a);

/// Canonicalizes a vertex set: sorts, rejects duplicates and range errors.
std::vector<int> canonical_vertex_set(const std::vector<int>& s, int n, const char* what);

std::string edge_to_string(const Edge& e);

}  // namespace rainbow
