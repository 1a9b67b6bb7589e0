#include "rainbow/hypergraph.hpp"

#include <algorithm>

#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"

namespace rainbow {

std::vector<int> canonical_vertex_set(const std::vector<int>& s, int n, const char* what) {
  std::vector<int> out = s;
  std::sort(out.begin(), out.end());
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0 || out[i] >= n)
      throw contract_error(std::string(what) + ": vertex " + std::to_string(out[i]) + " out of range");
    if (i > 0 && out[i] == out[i - 1])
      throw contract_error(std::string(what) + ": repeated vertex " + std::to_string(out[i]));
  }
  return out;
}

std::string edge_to_string(const Edge& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(e[i]);
  }
  return s;
}

Hypergraph::Hypergraph(int n, int k, std::vector<Edge> edges) : n_(n), k_(k) {
  if (k < 2) throw contract_error("hypergraph arity must be at least 2");
  if (n < 0) throw contract_error("negative vertex count");
  edges_.reserve(edges.size());
  for (Edge& e : edges) {
    if ((int)e.size() != k)
      throw contract_error("edge {" + edge_to_string(e) + "} has arity " +
                           std::to_string(e.size()) + ", expected " + std::to_string(k));
    edges_.push_back(canonical_vertex_set(e, n, "edge"));
  }
  std::sort(edges_.begin(), edges_.end());
  for (size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i] == edges_[i - 1])
      throw contract_error("duplicate edge {" + edge_to_string(edges_[i]) + "}");
  incidence_.assign((size_t)n_, {});
  for (size_t id = 0; id < edges_.size(); ++id)
    for (int v : edges_[id]) incidence_[(size_t)v].push_back((int)id);
}

Hypergraph Hypergraph::complete(int n, int k) {
  return Hypergraph(n, k, all_k_subsets(n, k));
}

Hypergraph Hypergraph::empty(int n, int k) { return Hypergraph(n, k, {}); }

bool Hypergraph::contains(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

const std::vector<int>& Hypergraph::incident(int v) const {
  if (v < 0 || v >= n_) throw contract_error("incident: vertex out of range");
  return incidence_[(size_t)v];
}

long long Hypergraph::degree(const std::vector<int>& s_in) const {
  std::vector<int> s = canonical_vertex_set(s_in, n_, "degree");
  if ((int)s.size() > k_) throw contract_error("degree: set larger than arity");
  if (s.empty()) return edge_count();
  long long d = 0;
  for (int id : incidence_[(size_t)s[0]]) {
    const Edge& e = edges_[(size_t)id];
    if (std::includes(e.begin(), e.end(), s.begin(), s.end())) ++d;
  }
  return d;
}

std::vector<Edge> Hypergraph::link(const std::vector<int>& s_in) const {
  std::vector<int> s = canonical_vertex_set(s_in, n_, "link");
  if (s.empty() || (int)s.size() >= k_)
    throw contract_error("link requires 0 < |S| < k");
  std::vector<Edge> out;
  for (int id : incidence_[(size_t)s[0]]) {
    const Edge& e = edges_[(size_t)id];
    if (!std::includes(e.begin(), e.end(), s.begin(), s.end())) continue;
    Edge t;
    std::set_difference(e.begin(), e.end(), s.begin(), s.end(), std::back_inserter(t));
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

long long Hypergraph::min_degree(int l) const {
  if (l < 0 || l >= k_) throw contract_error("min_degree requires 0 <= l < k");
  if (l == 0) return edge_count();
  if (n_ < l) throw contract_error("min_degree: fewer than l vertices");
  long long best = -1;
  for_each_k_subset(n_, l, [&](const std::vector<int>& s) {
    long long d = degree(s);
    if (best < 0 || d < best) best = d;
  });
  return best;
}

Hypergraph Hypergraph::complement() const {
  std::vector<Edge> out;
  for_each_k_subset(n_, k_, [&](const Edge& e) {
    if (!contains(e)) out.push_back(e);
  });
  return Hypergraph(n_, k_, std::move(out));
}

static InducedSubgraph build_restricted(const Hypergraph& h, const std::vector<int>& keep) {
  std::vector<int> new_label((size_t)h.vertex_count(), -1);
  for (size_t j = 0; j < keep.size(); ++j) new_label[(size_t)keep[j]] = (int)j;
  std::vector<Edge> sub;
  for (const Edge& e : h.edges()) {
    Edge mapped;
    mapped.reserve(e.size());
    for (int v : e) {
      if (new_label[(size_t)v] < 0) break;
      mapped.push_back(new_label[(size_t)v]);
    }
    if (mapped.size() == e.size()) sub.push_back(std::move(mapped));
  }
  return {Hypergraph((int)keep.size(), h.arity(), std::move(sub)), keep};
}

InducedSubgraph restrict_to(const Hypergraph& h, const std::vector<int>& a) {
  return build_restricted(h, canonical_vertex_set(a, h.vertex_count(), "restrict"));
}

InducedSubgraph remove_vertices(const Hypergraph& h, const std::vector<int>& a) {
  std::vector<int> drop = canonical_vertex_set(a, h.vertex_count(), "remove");
  std::vector<int> keep;
  size_t j = 0;
  for (int v = 0; v < h.vertex_count(); ++v) {
    if (j < drop.size() && drop[j] == v) {
      ++j;
      continue;
    }
    keep.push_back(v);
  }
  return build_restricted(h, keep);
}

}  // namespace rainbow
