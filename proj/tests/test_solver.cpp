#include "doctest.h"
#include "oracle.hpp"
#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;

namespace {

Hypergraph random_hypergraph(int n, int k, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for_each_k_subset(n, k, [&](const std::vector<int>& s) {
    if (rng.chance(p)) edges.push_back(s);
  });
  return Hypergraph(n, k, std::move(edges));
}

}  // namespace

TEST_CASE("perfect matching counts on complete hypergraphs") {
  // closed forms: n! / ((k!)^(n/k) (n/k)!)
  CHECK(count_perfect_matchings(Hypergraph::complete(6, 3)).count == 10);
  CHECK(count_perfect_matchings(Hypergraph::complete(9, 3)).count == 280);
  CHECK(count_perfect_matchings(Hypergraph::complete(6, 2)).count == 15);
  CHECK(count_perfect_matchings(Hypergraph::complete(8, 4)).count == 35);
  CHECK(count_perfect_matchings(Hypergraph::complete(12, 4)).count == 5775);
  CHECK(count_perfect_matchings(Hypergraph::empty(6, 3)).count == 0);
  CHECK(count_perfect_matchings(Hypergraph::complete(7, 3)).count == 0);  // 3 does not divide 7
}

TEST_CASE("solver agrees with the subset-dp oracle on random inputs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    int n = 6 + 2 * (int)(seed % 3);       // 6, 8, 10
    int k = (n % 4 == 0 && seed % 2) ? 4 : 2 + (int)(seed % 2);
    if (n % k != 0) k = 2;
    Hypergraph h = random_hypergraph(n, k, 0.4 + 0.03 * (double)seed, seed * 977);
    CAPTURE(n);
    CAPTURE(k);
    CAPTURE(seed);

    std::uint64_t expect = oracle::count_pm_subset_dp(h);
    CHECK(count_perfect_matchings(h).count == expect);

    SolverOptions plain;
    plain.fail_first = false;
    CHECK(count_perfect_matchings(h, Budget(), plain).count == expect);

    auto res = find_perfect_matching(h);
    if (expect > 0) {
      REQUIRE(res.status == SolveStatus::found);
      REQUIRE(res.matching.has_value());
      std::string why;
      CHECK(verify_perfect_matching(h, *res.matching, &why));
    } else {
      CHECK(res.status == SolveStatus::none);
      CHECK_FALSE(res.matching.has_value());
    }

    CHECK(max_matching_size(h).size == oracle::max_matching_subset_dp(h));
  }
}

TEST_CASE("pivot heuristic does not change answers") {
  for (std::uint64_t seed = 50; seed < 56; ++seed) {
    Hypergraph h = random_hypergraph(9, 3, 0.35, seed);
    SolverOptions ff, plain;
    plain.fail_first = false;
    auto a = find_perfect_matching(h, Budget(), ff);
    auto b = find_perfect_matching(h, Budget(), plain);
    CHECK(a.status == b.status);
    CHECK(count_perfect_matchings(h, Budget(), ff).count ==
          count_perfect_matchings(h, Budget(), plain).count);
  }
}

TEST_CASE("unmatchable structure is reported as none") {
  // drop every edge through vertex 0
  Hypergraph full = Hypergraph::complete(6, 3);
  std::vector<Edge> edges;
  for (const Edge& e : full.edges())
    if (e[0] != 0) edges.push_back(e);
  Hypergraph h(6, 3, std::move(edges));
  auto res = find_perfect_matching(h);
  CHECK(res.status == SolveStatus::none);
  CHECK(count_perfect_matchings(h).count == 0);
  CHECK(max_matching_size(h).size == 1);  // any edge blocks the rest of 5 vertices
}

TEST_CASE("node budgets surface as timeout or resource errors") {
  Hypergraph h = Hypergraph::complete(15, 3);
  auto res = find_perfect_matching(h, Budget(2));
  CHECK(res.status == SolveStatus::timeout);
  CHECK(res.nodes >= 2);

  std::uint64_t true_count = count_perfect_matchings(h).count;
  CHECK(true_count == 1401400);
  try {
    count_perfect_matchings(h, Budget(50));
    FAIL("expected resource_error");
  } catch (const resource_error& e) {
    CHECK(e.partial >= 0);
    CHECK((std::uint64_t)e.partial < true_count);
  }

  // all edges through one vertex: the free/arity bound stays loose, so the
  // search really enumerates and the budget bites
  std::vector<Edge> star_edges;
  for_each_k_subset(17, 2, [&](const std::vector<int>& s) {
    star_edges.push_back({0, s[0] + 1, s[1] + 1});
  });
  Hypergraph star18(18, 3, std::move(star_edges));
  try {
    max_matching_size(star18, Budget(10));
    FAIL("expected resource_error");
  } catch (const resource_error& e) {
    CHECK(e.partial <= 1);
  }
}

TEST_CASE("max matching sizes") {
  CHECK(max_matching_size(Hypergraph::complete(7, 3)).size == 2);
  CHECK(max_matching_size(Hypergraph::complete(6, 3)).size == 2);
  CHECK(max_matching_size(Hypergraph::empty(6, 3)).size == 0);
  Hypergraph star(7, 3, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}});
  CHECK(max_matching_size(star).size == 1);
}

TEST_CASE("colored solve matches the plain solve of the reduction graph") {
  RainbowFamily fam(6, 3, {Hypergraph::complete(6, 3), Hypergraph::complete(6, 3)});
  ColoredGraph t = build_rainbow_graph(fam);

  auto colored = find_perfect_matching(t);
  REQUIRE(colored.status == SolveStatus::found);
  std::string why;
  CHECK(verify_colored_matching(t, *colored.matching, true, &why));

  // same instance through the plain hypergraph view
  auto plain = find_perfect_matching(t.as_hypergraph());
  CHECK(plain.status == SolveStatus::found);

  // counts agree too: every rainbow pm appears once on both sides
  CHECK(count_perfect_matchings(t).count == count_perfect_matchings(t.as_hypergraph()).count);
}

TEST_CASE("direct rainbow search agrees with the reduction route") {
  for (std::uint64_t seed = 200; seed < 212; ++seed) {
    int n = (seed % 2) ? 6 : 8;
    int k = (seed % 2) ? 3 : 4;
    std::vector<Hypergraph> layers;
    Rng rng(seed);
    for (int c = 0; c < n / k; ++c)
      layers.push_back(random_hypergraph(n, k, 0.3 + 0.05 * (double)(seed % 5), rng.next_u64()));
    RainbowFamily fam(n, k, layers);
    CAPTURE(seed);

    auto direct = find_rainbow_pm(fam);
    auto via_t = find_perfect_matching(build_rainbow_graph(fam));
    CHECK(direct.status == via_t.status);
    CHECK((direct.status == SolveStatus::found) == oracle::has_rainbow_brute(fam));

    if (direct.status == SolveStatus::found) {
      std::string why;
      CHECK(verify_rainbow_pm(fam, *direct.assignment, &why));
      auto back = rainbow_of_pm(build_rainbow_graph(fam), *via_t.matching);
      CHECK(verify_rainbow_pm(fam, back, &why));
    }
  }
}

TEST_CASE("solver witnesses are deterministic") {
  Hypergraph h = random_hypergraph(9, 3, 0.5, 31337);
  auto a = find_perfect_matching(h);
  auto b = find_perfect_matching(h);
  REQUIRE(a.status == SolveStatus::found);
  CHECK(a.matching == b.matching);
  CHECK(a.nodes == b.nodes);
}
