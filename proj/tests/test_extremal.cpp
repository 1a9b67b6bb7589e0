#include "doctest.h"
#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;

TEST_CASE("parity hypergraph membership rule") {
  // empty A, i=0: every edge meets A in zero vertices
  CHECK(build_parity_hypergraph(5, 3, {}, 0) == Hypergraph::complete(5, 3));
  CHECK(build_parity_hypergraph(5, 3, {}, 1).edge_count() == 0);

  Hypergraph h = build_parity_hypergraph(4, 2, {0, 1}, 0);
  CHECK(h.edge_count() == 2);
  CHECK(h.contains({0, 1}));
  CHECK(h.contains({2, 3}));

  CHECK(build_parity_hypergraph(6, 3, {0, 1, 2}, 0).edge_count() == 10);
  CHECK(build_parity_hypergraph(6, 3, {0, 1, 2}, 1).edge_count() == 10);
}

TEST_CASE("edge count formula matches construction") {
  CHECK(parity_edge_count(6, 3, 3, 0) == 10);  // C(3,0)C(3,3) + C(3,2)C(3,1)
  CHECK(parity_edge_count(4, 2, 2, 0) == 2);

  Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    int k = 2 + rng.below_int(3);
    int n = k + rng.below_int(15 - k);  // n in [k, 14]
    int a_size = rng.below_int(n + 1);
    int i = rng.below_int(2);
    std::vector<int> a = rng.sample_distinct(n, a_size);
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(a_size);
    CAPTURE(i);
    CHECK(build_parity_hypergraph(n, k, a, i).edge_count() == parity_edge_count(n, k, a_size, i));
  }
}

TEST_CASE("ext enumeration lists exactly the obstructed patterns") {
  auto ext63 = enumerate_ext(6, 3);
  CHECK(ext63.size() == 64);  // n/k even, so |A| odd; 2^5 subsets times two parities
  for (const auto& p : ext63) {
    CHECK(p.obstructed());
    CHECK(p.a_size() % 2 == 1);
  }

  CHECK(enumerate_ext(4, 2).size() == 16);
  CHECK(enumerate_ext(9, 3).size() == 512);  // i + |A| must be odd
  CHECK_THROWS_AS(enumerate_ext(7, 3), contract_error);

  // nonempty for every small valid (n, k)
  for (int k = 2; k <= 5; ++k)
    for (int n = k; n <= 4 * k; n += k) CHECK(!enumerate_ext(n, k).empty());
}

TEST_CASE("every ext pattern blocks perfect matchings at n=6") {
  for (const auto& p : enumerate_ext(6, 3)) {
    Hypergraph h = build_parity_hypergraph(p.n, p.k, p.a, p.i);
    CAPTURE(p.a_size());
    CAPTURE(p.i);
    CHECK(find_perfect_matching(h).status == SolveStatus::none);
  }
}

TEST_CASE("closed-form pattern degrees agree with graph enumeration") {
  Rng rng(999);
  for (int trial = 0; trial < 60; ++trial) {
    int k = 2 + rng.below_int(3);
    int n = k + 1 + rng.below_int(12 - k);
    int a_size = rng.below_int(n + 1);
    int i = rng.below_int(2);
    int l = rng.below_int(k);
    std::vector<int> a((std::size_t)a_size);
    for (int v = 0; v < a_size; ++v) a[(std::size_t)v] = v;
    Hypergraph h = build_parity_hypergraph(n, k, a, i);
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(a_size);
    CAPTURE(i);
    CAPTURE(l);
    CHECK(pattern_min_degree(n, k, a_size, i, l) == h.min_degree(l));
  }
}

TEST_CASE("degree threshold enumeration hits the anchored values") {
  CHECK(delta_threshold(6, 3, 2).value == 1);
  CHECK(delta_threshold(9, 3, 2).value == 2);
  CHECK(delta_threshold(12, 3, 2).value == 4);
  CHECK(delta_threshold(8, 4, 3).value == 1);
  CHECK(delta_threshold(12, 4, 3).value == 4);

  ThresholdReport rep = delta_threshold(9, 3, 2);
  CHECK(rep.method == "enumeration");
  CHECK(rep.witness.obstructed());
  Hypergraph witness = build_parity_hypergraph(rep.witness.n, rep.witness.k, rep.witness.a, rep.witness.i);
  CHECK(witness.min_degree(2) == rep.value);

  // also the l < k-1 values stay consistent with the closed form route
  for (int size = 0; size <= 9; ++size)
    for (int i = 0; i <= 1; ++i) {
      if (!ext_obstructed(9, 3, size, i)) continue;
      CHECK(pattern_min_degree(9, 3, size, i, 1) <= delta_threshold(9, 3, 1).value);
    }

  CHECK_THROWS_AS(delta_threshold(12, 3, 2, 10), resource_error);
}

TEST_CASE("codegree formula equals enumeration on the full small grid") {
  for (int k = 3; k <= 4; ++k) {
    for (int n = k; n <= 12; n += k) {
      HalfInt f = delta_codegree_formula(n, k);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(f.is_integer());
      CHECK(f == HalfInt::whole(delta_threshold(n, k, k - 1).value));
    }
  }
  CHECK(delta_codegree_formula(9, 3) == HalfInt::whole(2));
  CHECK(delta_codegree_formula(8, 4) == HalfInt::whole(1));
  CHECK(delta_codegree_formula(12, 4) == HalfInt::whole(4));
  CHECK(delta_codegree_formula(15, 3) == HalfInt::whole(6));
  CHECK(HalfInt::halves(7).str() == "7/2");
  CHECK(HalfInt::whole(4).str() == "4");
}

TEST_CASE("canonical pattern choice is stable") {
  auto check_pick = [](int n, int k, int size, int i) {
    VertexPartition p = canonical_extremal_pattern(n, k);
    CAPTURE(n);
    CAPTURE(k);
    CHECK(p.a_size() == size);
    CHECK(p.i == i);
    CHECK(p.obstructed());
    // canonical pattern attains the codegree threshold
    CHECK(pattern_min_degree(n, k, p.a_size(), p.i, k - 1) == delta_threshold(n, k, k - 1).value);
  };
  check_pick(6, 3, 3, 0);
  check_pick(9, 3, 5, 0);
  check_pick(12, 3, 5, 0);
  check_pick(15, 3, 7, 0);
  check_pick(8, 4, 3, 1);
  check_pick(12, 4, 6, 1);
}

TEST_CASE("the all-extremal colored graph has no perfect matching") {
  ColoredGraph t = build_T_ext(6, 3);
  CHECK(t.total_vertices() == 8);
  CHECK(t.edge_count() == 20);  // two identical layers of 10
  CHECK(find_perfect_matching(t).status == SolveStatus::none);

  ColoredGraph t93 = build_T_ext(9, 3);
  CHECK(t93.edge_count() == 3 * parity_edge_count(9, 3, 5, 0));
  CHECK(find_perfect_matching(t93).status == SolveStatus::none);
}
