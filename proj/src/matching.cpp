#include "rainbow/matching.hpp"

#include <algorithm>

#include "rainbow/rng.hpp"

namespace rainbow {
namespace {

bool fail(std::string* why, const std::string& reason) {
  if (why) *why = reason;
  return false;
}

}  // namespace

bool is_matching(const std::vector<Edge>& edges) {
  std::vector<int> all;
  for (const Edge& e : edges) all.insert(all.end(), e.begin(), e.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

bool verify_perfect_matching(const Hypergraph& h, const std::vector<Edge>& matching,
                             std::string* why) {
  std::vector<char> covered((size_t)h.vertex_count(), 0);
  for (const Edge& e : matching) {
    if (!h.contains(e)) return fail(why, "edge {" + edge_to_string(e) + "} not in hypergraph");
    for (int v : e) {
      if (v < 0 || v >= h.vertex_count()) return fail(why, "vertex out of range");
      if (covered[(size_t)v]) return fail(why, "vertex " + std::to_string(v) + " covered twice");
      covered[(size_t)v] = 1;
    }
  }
  for (int v = 0; v < h.vertex_count(); ++v)
    if (!covered[(size_t)v]) return fail(why, "vertex " + std::to_string(v) + " uncovered");
  return true;
}

bool verify_colored_matching(const ColoredGraph& t, const std::vector<ColoredEdge>& matching,
                             bool perfect, std::string* why) {
  std::vector<char> color_used((size_t)t.color_count(), 0);
  std::vector<char> base_used((size_t)t.base_count(), 0);
  for (const ColoredEdge& e : matching) {
    if (!t.contains(e))
      return fail(why, "edge (" + std::to_string(e.color) + ", {" + edge_to_string(e.base) +
                           "}) not in graph");
    if (color_used[(size_t)e.color])
      return fail(why, "color " + std::to_string(e.color) + " used twice");
    color_used[(size_t)e.color] = 1;
    for (int v : e.base) {
      if (base_used[(size_t)v])
        return fail(why, "base vertex " + std::to_string(v) + " covered twice");
      base_used[(size_t)v] = 1;
    }
  }
  if (perfect) {
    for (int c = 0; c < t.color_count(); ++c)
      if (!color_used[(size_t)c]) return fail(why, "color " + std::to_string(c) + " unused");
    for (int v = 0; v < t.base_count(); ++v)
      if (!base_used[(size_t)v]) return fail(why, "base vertex " + std::to_string(v) + " uncovered");
  }
  return true;
}

bool verify_rainbow_pm(const RainbowFamily& family, const std::vector<Edge>& assignment,
                       std::string* why) {
  if ((int)assignment.size() != family.layer_count())
    return fail(why, "assignment size differs from layer count");
  std::vector<char> used((size_t)family.n, 0);
  for (int c = 0; c < family.layer_count(); ++c) {
    const Edge& e = assignment[(size_t)c];
    if (!family.layers[(size_t)c].contains(e))
      return fail(why, "edge {" + edge_to_string(e) + "} not in layer " + std::to_string(c));
    for (int v : e) {
      if (used[(size_t)v]) return fail(why, "vertex " + std::to_string(v) + " used twice");
      used[(size_t)v] = 1;
    }
  }
  for (int v = 0; v < family.n; ++v)
    if (!used[(size_t)v]) return fail(why, "vertex " + std::to_string(v) + " uncovered");
  return true;
}

std::uint64_t matching_hash(const std::vector<Edge>& matching) {
  std::vector<Edge> sorted = matching;
  std::sort(sorted.begin(), sorted.end());
  std::string repr;
  for (const Edge& e : sorted) repr += edge_to_string(e) + ";";
  return fnv1a64(repr);
}

std::uint64_t matching_hash(const std::vector<ColoredEdge>& matching) {
  std::vector<ColoredEdge> sorted = matching;
  std::sort(sorted.begin(), sorted.end());
  std::string repr;
  for (const ColoredEdge& e : sorted)
    repr += std::to_string(e.color) + ":" + edge_to_string(e.base) + ";";
  return fnv1a64(repr);
}

}  // namespace rainbow
