#pragma once

#include <utility>
#include <vector>

#include "rainbow/hypergraph.hpp"

namespace rainbow {

/// A family of n/k hypergraphs on a common vertex set {0, ..., n-1}. A
/// rainbow perfect matching picks one edge from each member, all pairwise
/// disjoint and jointly covering the vertex set.
struct RainbowFamily {
  int n = 0;
  int k = 2;
  std::vector<Hypergraph> layers;

  RainbowFamily() = default;
  RainbowFamily(int n_, int k_, std::vector<Hypergraph> layers_);

  int layer_count() const { return (int)layers.size(); }
};

/// An edge of the reduction graph: one color plus a k-set of base vertices.
struct ColoredEdge {
  int color = 0;
  Edge base;

  friend auto operator<=>(const ColoredEdge&, const ColoredEdge&) = default;
};

/// The (1,k)-graph built from a family: color vertices x_0..x_{m-1} live at
/// global indices n..n+m-1, base vertices keep their indices. Every edge uses
/// exactly one color vertex, so perfect matchings of this graph are exactly
/// the rainbow perfect matchings of the family.
class ColoredGraph {
 public:
  ColoredGraph() = default;

  /// Validates colors and base sets; sorts edges by (color, base); rejects
  /// duplicate (color, base) pairs.
  ColoredGraph(int m, int n, int k, std::vector<ColoredEdge> edges);

  int color_count() const { return m_; }
  int base_count() const { return n_; }
  int arity() const { return k_; }
  int total_vertices() const { return n_ + m_; }
  int color_vertex(int c) const { return n_ + c; }

  const std::vector<ColoredEdge>& edges() const { return edges_; }
  long long edge_count() const { return (long long)edges_.size(); }
  bool contains(const ColoredEdge& e) const;

  /// Edge ids of one color, contiguous in edges().
  std::pair<int, int> color_range(int c) const;

  /// The same graph viewed as a plain (k+1)-uniform hypergraph on
  /// total_vertices() vertices. Edge order is preserved.
  Hypergraph as_hypergraph() const;

  /// All vertices of an edge, color vertex included, sorted.
  std::vector<int> edge_vertices(const ColoredEdge& e) const;

  bool operator==(const ColoredGraph& other) const = default;

 private:
  int m_ = 0;
  int n_ = 0;
  int k_ = 2;
  std::vector<ColoredEdge> edges_;
  std::vector<int> color_start_;
};

ColoredGraph build_rainbow_graph(const RainbowFamily& family);

/// True iff k * |U ∩ colors| == |U ∩ base| for a set of global vertex ids.
bool is_balanced(const std::vector<int>& u, int base_count, int k);

/// Perfect matching of the reduction graph -> the per-layer edge assignment.
/// assignment[c] is the edge picked from layer c. Throws contract_error if M
/// is not a perfect matching of T.
std::vector<Edge> rainbow_of_pm(const ColoredGraph& t, const std::vector<ColoredEdge>& m);

/// Per-layer assignment -> perfect matching of the reduction graph. Throws
/// contract_error if the assignment is not a rainbow perfect matching.
std::vector<ColoredEdge> pm_of_rainbow(const RainbowFamily& family, const std::vector<Edge>& assignment);

}  // namespace rainbow
