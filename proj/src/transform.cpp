#include "rainbow/transform.hpp"

#include <algorithm>

#include "rainbow/errors.hpp"

namespace rainbow {

RainbowFamily::RainbowFamily(int n_in, int k_in, std::vector<Hypergraph> layers_in)
    : n(n_in), k(k_in), layers(std::move(layers_in)) {
  if (k < 2) throw contract_error("family arity must be at least 2");
  if (n < 0 || n % k != 0)
    throw contract_error("family vertex count " + std::to_string(n) +
                         " is not divisible by k = " + std::to_string(k));
  if ((int)layers.size() != n / k)
    throw contract_error("family has " + std::to_string(layers.size()) +
                         " layers, expected n/k = " + std::to_string(n / k));
  for (const Hypergraph& h : layers)
    if (h.vertex_count() != n || h.arity() != k)
      throw contract_error("layer dimensions disagree with the family header");
}

ColoredGraph::ColoredGraph(int m, int n, int k, std::vector<ColoredEdge> edges)
    : m_(m), n_(n), k_(k), edges_(std::move(edges)) {
  if (k_ < 2) throw contract_error("colored graph arity must be at least 2");
  if (m_ < 0 || n_ < 0) throw contract_error("negative colored graph dimensions");
  for (ColoredEdge& e : edges_) {
    if (e.color < 0 || e.color >= m_)
      throw contract_error("color " + std::to_string(e.color) + " out of range");
    if ((int)e.base.size() != k_)
      throw contract_error("colored edge base has arity " + std::to_string(e.base.size()) +
                           ", expected " + std::to_string(k_));
    e.base = canonical_vertex_set(e.base, n_, "colored edge");
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1])
      throw contract_error("duplicate colored edge (" + std::to_string(edges_[i].color) + ", {" +
                           edge_to_string(edges_[i].base) + "})");
  color_start_.assign((size_t)m_ + 1, (int)edges_.size());
  for (int i = (int)edges_.size() - 1; i >= 0; --i)
    color_start_[(size_t)edges_[(size_t)i].color] = i;
  for (int c = m_ - 1; c >= 0; --c)
    if (color_start_[(size_t)c] > color_start_[(size_t)c + 1])
      color_start_[(size_t)c] = color_start_[(size_t)c + 1];
}

bool ColoredGraph::contains(const ColoredEdge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::pair<int, int> ColoredGraph::color_range(int c) const {
  if (c < 0 || c >= m_) throw contract_error("color_range: color out of range");
  return {color_start_[(size_t)c], color_start_[(size_t)c + 1]};
}

Hypergraph ColoredGraph::as_hypergraph() const {
  std::vector<Edge> plain;
  plain.reserve(edges_.size());
  for (const ColoredEdge& e : edges_) plain.push_back(edge_vertices(e));
  return Hypergraph(total_vertices(), k_ + 1, std::move(plain));
}

std::vector<int> ColoredGraph::edge_vertices(const ColoredEdge& e) const {
  std::vector<int> v = e.base;
  v.push_back(color_vertex(e.color));
  return v;
}

ColoredGraph build_rainbow_graph(const RainbowFamily& family) {
  std::vector<ColoredEdge> edges;
  for (int c = 0; c < family.layer_count(); ++c)
    for (const Edge& e : family.layers[(size_t)c].edges())
      edges.push_back({c, e});
  return ColoredGraph(family.layer_count(), family.n, family.k, std::move(edges));
}

bool is_balanced(const std::vector<int>& u, int base_count, int k) {
  long long colors = 0, bases = 0;
  for (int v : u)
    (v >= base_count ? colors : bases) += 1;
  return (long long)k * colors == bases;
}

std::vector<Edge> rainbow_of_pm(const ColoredGraph& t, const std::vector<ColoredEdge>& m) {
  if ((int)m.size() != t.color_count())
    throw contract_error("matching size differs from color count");
  std::vector<Edge> assignment((size_t)t.color_count());
  std::vector<char> color_used((size_t)t.color_count(), 0);
  std::vector<char> base_used((size_t)t.base_count(), 0);
  for (const ColoredEdge& e : m) {
    if (!t.contains(e))
      throw contract_error("matching edge (" + std::to_string(e.color) + ", {" +
                           edge_to_string(e.base) + "}) is not in the graph");
    if (color_used[(size_t)e.color]) throw contract_error("color used twice in matching");
    color_used[(size_t)e.color] = 1;
    for (int v : e.base) {
      if (base_used[(size_t)v])
        throw contract_error("base vertex " + std::to_string(v) + " covered twice");
      base_used[(size_t)v] = 1;
    }
    assignment[(size_t)e.color] = e.base;
  }
  for (char u : base_used)
    if (!u) throw contract_error("matching is not perfect: uncovered base vertex");
  return assignment;
}

std::vector<ColoredEdge> pm_of_rainbow(const RainbowFamily& family, const std::vector<Edge>& assignment) {
  if ((int)assignment.size() != family.layer_count())
    throw contract_error("assignment size differs from layer count");
  std::vector<char> base_used((size_t)family.n, 0);
  std::vector<ColoredEdge> m;
  for (int c = 0; c < family.layer_count(); ++c) {
    const Edge& e = assignment[(size_t)c];
    if (!family.layers[(size_t)c].contains(e))
      throw contract_error("assigned edge {" + edge_to_string(e) + "} is not in layer " +
                           std::to_string(c));
    for (int v : e) {
      if (base_used[(size_t)v])
        throw contract_error("vertex " + std::to_string(v) + " used by two assigned edges");
      base_used[(size_t)v] = 1;
    }
    m.push_back({c, e});
  }
  for (char u : base_used)
    if (!u) throw contract_error("assignment does not cover the vertex set");
  return m;
}

}  // namespace rainbow
