#include "rainbow/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <numeric>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

namespace {

constexpr std::uint64_t kDefaultBudget = 50'000'000;

std::uint64_t budget_from_env() {
  const char* raw = std::getenv("RAINBOW_MATCH_BUDGET");
  if (raw == nullptr || *raw == '\0') return kDefaultBudget;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) return kDefaultBudget;
  return v;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

std::vector<int> full_target(int n) {
  std::vector<int> t(static_cast<std::size_t>(n));
  std::iota(t.begin(), t.end(), 0);
  return t;
}

CoverProblem problem_of(const Hypergraph& h) {
  CoverProblem p;
  p.universe = h.vertex_count();
  p.target = full_target(h.vertex_count());
  p.sets.assign(h.edges().begin(), h.edges().end());
  return p;
}

CoverProblem problem_of(const ColoredGraph& t) {
  CoverProblem p;
  p.universe = t.total_vertices();
  p.target = full_target(t.total_vertices());
  p.sets.reserve((std::size_t)t.edge_count());
  for (const ColoredEdge& e : t.edges()) p.sets.push_back(t.edge_vertices(e));
  return p;
}

}  // namespace

Budget::Budget() : max_nodes(budget_from_env()) {}

SolveOutcome find_perfect_matching(const Hypergraph& h, Budget budget, SolverOptions opts) {
  Timer timer;
  if (h.vertex_count() == 0) {
    return {SolveStatus::found, std::vector<Edge>{}, 0, timer.ms()};
  }
  if (h.vertex_count() % h.arity() != 0) {
    return {SolveStatus::none, std::nullopt, 0, timer.ms()};
  }
  CoverOutcome res = cover_find(problem_of(h), budget.max_nodes, opts.fail_first);
  SolveOutcome out;
  out.status = res.status;
  out.nodes = res.nodes;
  if (res.status == SolveStatus::found) {
    std::vector<Edge> m;
    for (int id : res.chosen) m.push_back(h.edges()[(std::size_t)id]);
    out.matching = std::move(m);
  }
  out.elapsed_ms = timer.ms();
  return out;
}

ColoredSolveOutcome find_perfect_matching(const ColoredGraph& t, Budget budget, SolverOptions opts) {
  Timer timer;
  ColoredSolveOutcome out;
  if (t.total_vertices() == 0) {
    out.status = SolveStatus::found;
    out.matching = std::vector<ColoredEdge>{};
    out.elapsed_ms = timer.ms();
    return out;
  }
  CoverOutcome res = cover_find(problem_of(t), budget.max_nodes, opts.fail_first);
  out.status = res.status;
  out.nodes = res.nodes;
  if (res.status == SolveStatus::found) {
    std::vector<ColoredEdge> m;
    for (int id : res.chosen) m.push_back(t.edges()[(std::size_t)id]);
    out.matching = std::move(m);
  }
  out.elapsed_ms = timer.ms();
  return out;
}

namespace {

CountOutcome count_or_throw(const CoverProblem& p, Budget budget, SolverOptions opts) {
  CoverCountOutcome res = cover_count(p, budget.max_nodes, opts.fail_first);
  if (!res.exact) {
    resource_error err("perfect matching count ran out of node budget");
    err.partial = (long long)res.count;
    throw err;
  }
  return {res.count, res.nodes};
}

}  // namespace

CountOutcome count_perfect_matchings(const Hypergraph& h, Budget budget, SolverOptions opts) {
  if (h.vertex_count() == 0) return {1, 0};
  if (h.vertex_count() % h.arity() != 0) return {0, 0};
  return count_or_throw(problem_of(h), budget, opts);
}

CountOutcome count_perfect_matchings(const ColoredGraph& t, Budget budget, SolverOptions opts) {
  if (t.total_vertices() == 0) return {1, 0};
  return count_or_throw(problem_of(t), budget, opts);
}

MaxMatchingOutcome max_matching_size(const Hypergraph& h, Budget budget) {
  CoverMaxOutcome res = cover_max_disjoint(problem_of(h), budget.max_nodes);
  if (!res.exact) {
    resource_error err("max matching search ran out of node budget");
    err.partial = res.size;
    throw err;
  }
  return {res.size, res.nodes};
}

namespace {

struct RainbowSearch {
  const RainbowFamily& family;
  std::vector<char> used;          // ground vertices taken so far
  std::vector<int> pick;           // edge id per layer, -1 while unassigned
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes;
  bool out_of_budget = false;

  explicit RainbowSearch(const RainbowFamily& f, std::uint64_t budget)
      : family(f), used((std::size_t)f.n, 0), pick((std::size_t)f.layers.size(), -1),
        max_nodes(budget) {}

  bool usable(const Edge& e) const {
    for (int v : e)
      if (used[(std::size_t)v]) return false;
    return true;
  }

  // Fail-first over layers: assign next the unassigned layer with the
  // fewest edges still usable.
  int pick_layer(int& live_out) const {
    int layer = -1;
    int best = -1;
    for (std::size_t c = 0; c < family.layers.size(); ++c) {
      if (pick[c] >= 0) continue;
      int live = 0;
      for (const Edge& e : family.layers[c].edges()) {
        if (usable(e) && ++live >= best && best >= 0) break;
      }
      if (best < 0 || live < best) {
        best = live;
        layer = (int)c;
        if (best == 0) break;
      }
    }
    live_out = best;
    return layer;
  }

  bool run(int assigned) {
    if (assigned == (int)family.layers.size()) return true;
    if (++nodes > max_nodes) {
      out_of_budget = true;
      return false;
    }
    int live = 0;
    int layer = pick_layer(live);
    const auto& edges = family.layers[(std::size_t)layer].edges();
    for (std::size_t id = 0; id < edges.size(); ++id) {
      const Edge& e = edges[id];
      if (!usable(e)) continue;
      for (int v : e) used[(std::size_t)v] = 1;
      pick[(std::size_t)layer] = (int)id;
      if (run(assigned + 1)) return true;
      pick[(std::size_t)layer] = -1;
      for (int v : e) used[(std::size_t)v] = 0;
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

RainbowOutcome find_rainbow_pm(const RainbowFamily& family, Budget budget) {
  Timer timer;
  RainbowOutcome out;
  RainbowSearch s(family, budget.max_nodes);
  if (s.run(0)) {
    out.status = SolveStatus::found;
    std::vector<Edge> assignment;
    for (std::size_t c = 0; c < family.layers.size(); ++c)
      assignment.push_back(family.layers[c].edges()[(std::size_t)s.pick[c]]);
    out.assignment = std::move(assignment);
  } else {
    out.status = s.out_of_budget ? SolveStatus::timeout : SolveStatus::none;
  }
  out.nodes = s.nodes;
  out.elapsed_ms = timer.ms();
  return out;
}

}  // namespace rainbow
