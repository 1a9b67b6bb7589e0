#include "rainbow/closeness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/transform.hpp"

using namespace rainbow;

namespace {

// recount the edit distance from scratch by materializing the pattern graph
long long recount_edits(const ColoredGraph& t, const VertexPartition& w) {
  Hypergraph layer = build_parity_hypergraph(w.n, w.k, w.a, w.i);
  std::set<ColoredEdge> pattern;
  for (int c = 0; c < t.color_count(); ++c)
    for (const Edge& e : layer.edges()) pattern.insert({c, e});
  std::set<ColoredEdge> actual(t.edges().begin(), t.edges().end());
  long long edits = 0;
  for (const ColoredEdge& e : pattern)
    if (!actual.count(e)) ++edits;
  for (const ColoredEdge& e : actual)
    if (!pattern.count(e)) ++edits;
  return edits;
}

ColoredGraph drop_edge(const ColoredGraph& t, std::size_t id) {
  std::vector<ColoredEdge> edges = t.edges();
  edges.erase(edges.begin() + (long)id);
  return ColoredGraph(t.color_count(), t.base_count(), t.arity(), edges);
}

Hypergraph random_graph(int n, int k, double density, Rng& rng) {
  std::vector<Edge> edges;
  for_each_k_subset(n, k, [&](const std::vector<int>& s) {
    if (rng.chance(density)) edges.push_back(s);
  });
  return Hypergraph(n, k, edges);
}

}  // namespace

TEST_CASE("parity check for matchings of the reduction graph") {
  // i = 0: the matched part of A must be even regardless of the layer count
  CHECK(check_parity(2, 7, 0));
  CHECK(check_parity(0, 5, 0));
  CHECK_FALSE(check_parity(3, 4, 0));
  // i = 1: each of the x edges meets A oddly, so parities must agree
  CHECK(check_parity(3, 5, 1));
  CHECK(check_parity(4, 6, 1));
  CHECK_FALSE(check_parity(0, 5, 1));
  CHECK_FALSE(check_parity(5, 2, 1));
  CHECK_THROWS_AS(check_parity(1, 1, 2), contract_error);
}

TEST_CASE("closeness of the extremal graph to itself is zero") {
  ColoredGraph t = build_T_ext(6, 3);
  ClosenessReport r = closeness_to_ext(t, true);
  CHECK(r.edits == 0);
  CHECK(r.exact);
  CHECK(r.denominator == 4096);  // (6 + 2)^4
  CHECK(r.epsilon() == 0.0);
  CHECK(r.witness.a_size() == 3);
  CHECK(recount_edits(t, r.witness) == 0);
}

TEST_CASE("closeness counts one deleted edge") {
  ColoredGraph t = drop_edge(build_T_ext(6, 3), 0);
  ClosenessReport r = closeness_to_ext(t, true);
  CHECK(r.edits == 1);
  CHECK(r.epsilon() == doctest::Approx(1.0 / 4096.0));
  CHECK(recount_edits(t, r.witness) == 1);
}

TEST_CASE("closeness of the complete family at n=6 k=3") {
  RainbowFamily family(6, 3, std::vector<Hypergraph>(2, Hypergraph::complete(6, 3)));
  ColoredGraph t = build_rainbow_graph(family);
  ClosenessReport r = closeness_to_ext(t, true);
  // both layers keep their 10 even-intersection triples, lose the 10 odd ones
  CHECK(r.edits == 20);
  CHECK(recount_edits(t, r.witness) == 20);
}

TEST_CASE("exact closeness agrees with an order-free recount on random graphs") {
  Rng rng(411);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 6 + 3 * rng.below_int(2);  // 6 or 9
    std::vector<Hypergraph> layers;
    for (int c = 0; c < n / 3; ++c) layers.push_back(random_graph(n, 3, 0.4, rng));
    ColoredGraph t = build_rainbow_graph(RainbowFamily(n, 3, layers));
    ClosenessReport r = closeness_to_ext(t, true);
    CHECK(r.edits >= 0);
    CHECK(recount_edits(t, r.witness) == r.edits);
    // the witness class has minimal imbalance, so |A| is determined up to parity
    CHECK(std::abs(2 * r.witness.a_size() - n) <= 1);
    CHECK(r.witness.obstructed());
  }
}

TEST_CASE("sampled closeness upper-bounds exact and is reproducible") {
  ColoredGraph t = drop_edge(build_T_ext(9, 3), 4);
  ClosenessReport exact = closeness_to_ext(t, true);
  CHECK(exact.edits == 1);

  // parity scores oscillate with |A ∩ A*|, so the swap descent can stall on a
  // plateau; a thin sample may end far from the planted set but never below it
  ClosenessReport thin = closeness_to_ext(t, false, 50, 7);
  CHECK(thin.edits >= exact.edits);
  CHECK(recount_edits(t, thin.witness) == thin.edits);
  CHECK_FALSE(thin.exact);

  // with enough draws some sample lands on a minimal witness outright; for
  // k=3 the complementary (A, 0) and (V∖A, 1) witnesses tie at distance 1
  ClosenessReport wide = closeness_to_ext(t, false, 500, 7);
  CHECK(wide.edits == 1);
  CHECK(recount_edits(t, wide.witness) == 1);

  ClosenessReport again = closeness_to_ext(t, false, 50, 7);
  CHECK(again.edits == thin.edits);
  CHECK(again.witness.a == thin.witness.a);
}

TEST_CASE("exact closeness refuses a search it cannot finish") {
  ColoredGraph t = build_T_ext(30, 3);
  CHECK_THROWS_AS(closeness_to_ext(t, true), contract_error);
  ClosenessReport r = closeness_to_ext(t, false, 8, 3);
  CHECK(r.edits >= 0);
  CHECK(r.edits <= r.denominator);
  CHECK(recount_edits(t, r.witness) == r.edits);
  CHECK(r.witness.a_size() == 15);
}

TEST_CASE("good vertex census on a planted deletion") {
  Hypergraph ref = Hypergraph::complete(5, 3);
  std::vector<Edge> kept;
  for (const Edge& e : ref.edges())
    if (e[0] != 0) kept.push_back(e);
  Hypergraph q(5, 3, kept);

  GoodnessReport r = good_vertices(q, ref, 0.5);
  CHECK(r.reference_threshold == 6);  // C(4,2)
  CHECK(r.bad == std::vector<int>{0});

  GoodnessReport strict = good_vertices(q, ref, 0.4);
  CHECK(strict.bad == std::vector<int>{0, 1, 2, 3, 4});

  GoodnessReport lax = good_vertices(q, ref, 1.0);
  CHECK(lax.bad.empty());

  CHECK_THROWS_AS(good_vertices(q, Hypergraph::complete(6, 3), 0.5), contract_error);
  CHECK_THROWS_AS(good_vertices(q, Hypergraph::complete(5, 4), 0.5), contract_error);
  CHECK_THROWS_AS(good_vertices(q, ref, -0.1), contract_error);
}

TEST_CASE("few vertices fail the census under small edit distance") {
  // if q misses at most eps * n^r edges of ref, at most eps' * n vertices can
  // be worse than eps'-good with eps' = sqrt(r^r * eps)
  Rng rng(902);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 3 + rng.below_int(2);
    int n = r + 2 + rng.below_int(9 - r);
    Hypergraph ref = random_graph(n, r, 0.7, rng);
    std::vector<Edge> kept;
    long long deleted = 0;
    for (const Edge& e : ref.edges()) {
      if (rng.chance(0.08)) {
        ++deleted;
        continue;
      }
      kept.push_back(e);
    }
    Hypergraph q(n, r, kept);
    double eps = (double)deleted / std::pow((double)n, r);
    double eps_prime = std::sqrt(std::pow((double)r, r) * eps);
    GoodnessReport census = good_vertices(q, ref, eps_prime);
    CHECK((double)census.bad.size() <= eps_prime * n);
  }
}

TEST_CASE("goodness carries over to induced subgraphs with a scaled constant") {
  Rng rng(515);
  for (int trial = 0; trial < 30; ++trial) {
    int r = 3;
    int n = 8 + rng.below_int(4);
    Hypergraph ref = random_graph(n, r, 0.6, rng);
    std::vector<Edge> kept;
    for (const Edge& e : ref.edges())
      if (!rng.chance(0.1)) kept.push_back(e);
    Hypergraph q(n, r, kept);

    double alpha = 0.05 + 0.1 * rng.unit();
    GoodnessReport global = good_vertices(q, ref, alpha);

    int u_size = r + 2 + rng.below_int(n - r - 2);
    std::vector<int> u = rng.sample_distinct(n, u_size);
    std::sort(u.begin(), u.end());
    InducedSubgraph qu = restrict_to(q, u);
    InducedSubgraph refu = restrict_to(ref, u);
    double scaled = alpha * (double)binomial(n - 1, r - 1) / (double)binomial(u_size - 1, r - 1);
    GoodnessReport local = good_vertices(qu.graph, refu.graph, scaled);
    for (int v : local.bad) {
      int orig = qu.to_original[(std::size_t)v];
      CHECK(std::find(global.bad.begin(), global.bad.end(), orig) != global.bad.end());
    }
  }
}
