#include "rainbow/extremal_solver.hpp"

#include <algorithm>
#include <cmath>

#include "rainbow/errors.hpp"
#include "rainbow/exact_cover.hpp"
#include "rainbow/matching.hpp"

namespace rainbow {

namespace {

std::vector<int> sorted_ids(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw contract_error("vertex set has repeats");
  return v;
}

struct RepairSearch {
  const ColoredGraph& t;
  const std::vector<int>& u;  // sorted
  std::vector<char> in_u, in_a, used;
  int a_left, x_left;
  std::uint64_t nodes = 0, budget;
  std::vector<std::vector<int>> incident;  // base vertex -> edge ids
  std::vector<int> chosen;
  int parity;

  RepairSearch(const ColoredGraph& t_, const std::vector<int>& u_, const VertexPartition& w,
               std::uint64_t budget_)
      : t(t_), u(u_), budget(budget_) {
    in_u.assign((std::size_t)t.total_vertices(), 0);
    in_a.assign((std::size_t)t.base_count(), 0);
    used.assign((std::size_t)t.total_vertices(), 0);
    for (int v : u) in_u[(std::size_t)v] = 1;
    for (int v : w.a) in_a[(std::size_t)v] = 1;
    a_left = w.a_size();
    x_left = t.color_count();
    parity = w.i;
    incident.assign((std::size_t)t.base_count(), {});
    for (std::size_t id = 0; id < t.edges().size(); ++id)
      for (int v : t.edges()[id].base) incident[(std::size_t)v].push_back((int)id);
  }

  int a_weight(const ColoredEdge& e) const {
    int w = 0;
    for (int v : e.base) w += in_a[(std::size_t)v];
    return w;
  }

  int u_hits(const ColoredEdge& e) const {
    int h = in_u[(std::size_t)t.color_vertex(e.color)];
    for (int v : e.base) h += in_u[(std::size_t)v];
    return h;
  }

  bool free_edge(const ColoredEdge& e) const {
    if (used[(std::size_t)t.color_vertex(e.color)]) return false;
    for (int v : e.base)
      if (used[(std::size_t)v]) return false;
    return true;
  }

  void take(int id) {
    const ColoredEdge& e = t.edges()[(std::size_t)id];
    used[(std::size_t)t.color_vertex(e.color)] = 1;
    for (int v : e.base) used[(std::size_t)v] = 1;
    a_left -= a_weight(e);
    --x_left;
    chosen.push_back(id);
  }

  void drop() {
    int id = chosen.back();
    chosen.pop_back();
    const ColoredEdge& e = t.edges()[(std::size_t)id];
    used[(std::size_t)t.color_vertex(e.color)] = 0;
    for (int v : e.base) used[(std::size_t)v] = 0;
    a_left += a_weight(e);
    ++x_left;
  }

  bool fix_parity() {
    if (check_parity(a_left, x_left, parity)) return true;
    for (std::size_t id = 0; id < t.edges().size(); ++id) {
      if (++nodes > budget) return false;
      const ColoredEdge& e = t.edges()[id];
      if (!free_edge(e) || u_hits(e) != 0) continue;
      if (check_parity(a_left - a_weight(e), x_left - 1, parity)) {
        take((int)id);
        return true;
      }
    }
    return false;
  }

  bool cover(std::size_t next) {
    if (nodes > budget) return false;
    if (next == u.size()) return fix_parity();
    int v = u[next];
    if (used[(std::size_t)v]) throw contract_error("bad vertices overlap earlier choices");
    auto try_edge = [&](int id) {
      ++nodes;
      const ColoredEdge& e = t.edges()[(std::size_t)id];
      if (!free_edge(e) || u_hits(e) != 1) return false;
      take(id);
      if (cover(next + 1)) return true;
      drop();
      return false;
    };
    if (v >= t.base_count()) {
      auto [from, to] = t.color_range(v - t.base_count());
      for (int id = from; id < to; ++id)
        if (try_edge(id)) return true;
    } else {
      for (int id : incident[(std::size_t)v])
        if (try_edge(id)) return true;
    }
    return false;
  }
};

}  // namespace

RepairOutcome remove_bad_vertices(const ColoredGraph& t, const std::vector<int>& u,
                                  const VertexPartition& w, std::uint64_t budget, int cap) {
  if (w.n != t.base_count() || w.k != t.arity())
    throw contract_error("witness partition does not match the graph");
  std::vector<int> su = sorted_ids(u);
  if (!su.empty() && (su.front() < 0 || su.back() >= t.total_vertices()))
    throw contract_error("bad vertex out of range");
  int cap_eff = cap >= 0 ? cap : t.base_count() / (4 * (t.arity() + 1));
  if ((int)su.size() > cap_eff) throw contract_error("too many bad vertices to repair");

  RepairSearch search(t, su, w, budget);
  RepairOutcome out;
  if (search.cover(0)) {
    out.ok = true;
    for (int id : search.chosen) out.matching.push_back(t.edges()[(std::size_t)id]);
    return out;
  }
  out.why = search.nodes > budget ? "repair search budget exhausted"
                                  : "no covering matching leaves the right parity";
  return out;
}

namespace {

std::vector<std::vector<int>> chunk(const std::vector<int>& pool, std::size_t from, int groups,
                                    int size) {
  std::vector<std::vector<int>> out;
  for (int g = 0; g < groups; ++g) {
    out.push_back(std::vector<int>(pool.begin() + (long)(from + (std::size_t)g * size),
                                   pool.begin() + (long)(from + (std::size_t)(g + 1) * size)));
  }
  return out;
}

std::vector<int> minus_sorted(const std::vector<int>& pool, const std::vector<int>& gone) {
  std::vector<int> out;
  std::set_difference(pool.begin(), pool.end(), gone.begin(), gone.end(),
                      std::back_inserter(out));
  return out;
}

struct Residual {
  std::vector<int> a, b, colors;  // global ids, sorted
  std::vector<char> alive;
  int n1 = 0, x = 0;
};

Residual residual_of(const ColoredGraph& t, const std::vector<int>& removed,
                     const std::vector<int>& a) {
  Residual r;
  r.alive.assign((std::size_t)t.total_vertices(), 1);
  for (int v : removed) {
    if (v < 0 || v >= t.total_vertices()) throw contract_error("removed vertex out of range");
    r.alive[(std::size_t)v] = 0;
  }
  std::vector<char> in_a((std::size_t)t.base_count(), 0);
  for (int v : a) {
    if (v < 0 || v >= t.base_count()) throw contract_error("pattern side must be base vertices");
    in_a[(std::size_t)v] = 1;
  }
  for (int v = 0; v < t.base_count(); ++v) {
    if (!r.alive[(std::size_t)v]) continue;
    (in_a[(std::size_t)v] ? r.a : r.b).push_back(v);
  }
  for (int c = 0; c < t.color_count(); ++c)
    if (r.alive[(std::size_t)t.color_vertex(c)]) r.colors.push_back(t.color_vertex(c));
  r.n1 = (int)(r.a.size() + r.b.size());
  r.x = (int)r.colors.size();
  if (r.n1 != t.arity() * r.x)
    throw contract_error("removed set must leave k base vertices per color");
  return r;
}

int meet(const ColoredEdge& e, const std::vector<char>& side) {
  int m = 0;
  for (int v : e.base) m += side[(std::size_t)v];
  return m;
}

// first edge fully inside the residual meeting `side` in exactly `want`
// base vertices, skipping anything in `taboo`
std::optional<ColoredEdge> find_seam(const ColoredGraph& t, const Residual& res,
                                     const std::vector<char>& side, int want,
                                     const std::vector<char>& taboo) {
  for (const ColoredEdge& e : t.edges()) {
    if (!res.alive[(std::size_t)t.color_vertex(e.color)]) continue;
    if (taboo[(std::size_t)t.color_vertex(e.color)]) continue;
    bool ok = true;
    for (int v : e.base) ok = ok && res.alive[(std::size_t)v] && !taboo[(std::size_t)v];
    if (ok && meet(e, side) == want) return e;
  }
  return std::nullopt;
}

}  // namespace

PlanOutcome build_partition_plan(const ColoredGraph& t, const std::vector<int>& removed,
                                 const std::vector<int>& a, int i) {
  int k = t.arity();
  Residual res = residual_of(t, sorted_ids(removed), sorted_ids(a));
  if (!check_parity((long long)res.a.size(), res.x, i))
    throw contract_error("residual parity is wrong for this pattern");

  PlanOutcome out;
  PartitionPlan& plan = out.plan;
  bool swap_sides = (i == 1) && (k % 2 == 1);
  plan.case_id = i == 0 ? (k % 2 == 0 ? 1 : 2) : (k % 2 == 0 ? 3 : 4);

  const std::vector<int>& p = swap_sides ? res.b : res.a;
  const std::vector<int>& q = swap_sides ? res.a : res.b;
  std::vector<char> p_side((std::size_t)t.base_count(), 0);
  for (int v : p) p_side[(std::size_t)v] = 1;
  std::vector<char> no_taboo((std::size_t)t.total_vertices(), 0);

  if (plan.case_id != 3) {
    int unit = (plan.case_id == 1) ? k : k - 1;
    plan.r = (int)p.size() / unit;
    plan.s = (int)p.size() % unit;
    if (plan.s % 2 != 0) throw contract_error("seam overlap came out odd");
    int q_size = res.x - plan.r - 1;
    if (q_size < 0 || res.x < 1) throw contract_error("residual too small for the partition");

    std::optional<ColoredEdge> seam = find_seam(t, res, p_side, plan.s, no_taboo);
    if (!seam) {
      out.why = "no residual edge meets the pattern side in exactly " + std::to_string(plan.s);
      return out;
    }
    plan.seam = {*seam};

    std::vector<int> seam_all = t.edge_vertices(*seam);
    std::vector<int> p2 = minus_sorted(p, seam_all);
    std::vector<int> q2 = minus_sorted(q, seam_all);
    if ((int)p2.size() != plan.r * unit || (int)q2.size() != q_size * k + (k - unit) * plan.r)
      throw contract_error("plan arithmetic broken");
    plan.t_groups = chunk(p2, 0, unit, plan.r);
    plan.s_groups = chunk(q2, 0, k, q_size);
    if (unit == k - 1)  // the last transversal group lives on the other side
      plan.t_groups.push_back(
          std::vector<int>(q2.begin() + (long)((std::size_t)q_size * k), q2.end()));

    std::vector<int> free_colors = minus_sorted(res.colors, seam_all);
    plan.y1.assign(free_colors.begin(), free_colors.begin() + plan.r);
    plan.y2.assign(free_colors.begin() + plan.r, free_colors.end());
    plan.y3 = {t.color_vertex(seam->color)};
    out.ok = true;
    return out;
  }

  // i = 1 with even k: two seam edges, transversal groups straddle the sides
  if (k < 4) throw contract_error("two-seam case needs k >= 4");
  int excess = (int)p.size() - res.x;
  if (excess < 0) throw contract_error("pattern side smaller than the color count");
  plan.r = excess / (k - 2);
  plan.s = excess % (k - 2);
  if (plan.s % 2 != 0) throw contract_error("seam overlap came out odd");
  int q_size = res.x - plan.r - 2;
  if (q_size < 0 || res.x < 2) throw contract_error("residual too small for the partition");

  std::optional<ColoredEdge> first, second;
  for (const ColoredEdge& e : t.edges()) {
    if (!res.alive[(std::size_t)t.color_vertex(e.color)]) continue;
    bool live = true;
    for (int v : e.base) live = live && res.alive[(std::size_t)v];
    if (!live || meet(e, p_side) != 1) continue;
    std::vector<char> taboo((std::size_t)t.total_vertices(), 0);
    for (int v : t.edge_vertices(e)) taboo[(std::size_t)v] = 1;
    second = find_seam(t, res, p_side, plan.s + 1, taboo);
    if (second) {
      first = e;
      break;
    }
  }
  if (!first) {
    out.why = "no disjoint residual edges meet the pattern side in 1 and " +
              std::to_string(plan.s + 1);
    return out;
  }
  plan.seam = {*first, *second};

  std::vector<int> seam_all =
      sorted_ids([&] {
        std::vector<int> v = t.edge_vertices(*first);
        for (int w : t.edge_vertices(*second)) v.push_back(w);
        return v;
      }());
  std::vector<int> p2 = minus_sorted(p, seam_all);
  std::vector<int> q2 = minus_sorted(q, seam_all);
  if ((int)p2.size() != plan.r * (k - 1) + q_size || (int)q2.size() != q_size * (k - 1) + plan.r)
    throw contract_error("plan arithmetic broken");

  plan.t_groups = chunk(p2, 0, k - 1, plan.r);
  plan.t_groups.push_back(
      std::vector<int>(q2.begin() + (long)((std::size_t)q_size * (k - 1)), q2.end()));
  plan.s_groups = chunk(q2, 0, k - 1, q_size);
  plan.s_groups.push_back(
      std::vector<int>(p2.begin() + (long)((std::size_t)plan.r * (k - 1)), p2.end()));

  std::vector<int> free_colors = minus_sorted(res.colors, seam_all);
  plan.y1.assign(free_colors.begin(), free_colors.begin() + plan.r);
  plan.y2.assign(free_colors.begin() + plan.r, free_colors.end());
  plan.y3 = {t.color_vertex(first->color), t.color_vertex(second->color)};
  out.ok = true;
  return out;
}

namespace {

struct SubSolve {
  SolveStatus status = SolveStatus::found;
  std::vector<ColoredEdge> matching;
};

// perfect matching of the transversal subproblem: colors from y, one base
// vertex per group, edges taken from t
SubSolve solve_group(const ColoredGraph& t, const std::vector<int>& y,
                     const std::vector<std::vector<int>>& groups, const Budget& budget) {
  SubSolve out;
  if ((int)groups.size() != t.arity())
    throw contract_error("transversal subproblem needs one group per edge slot");
  long long base_total = 0;
  for (const std::vector<int>& g : groups) base_total += (long long)g.size();
  if (y.empty()) {
    if (base_total != 0) out.status = SolveStatus::none;
    return out;
  }

  std::vector<int> group_of((std::size_t)t.base_count(), -1);
  std::vector<int> local((std::size_t)t.total_vertices(), -1);
  int next = 0;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (int v : groups[g]) {
      group_of[(std::size_t)v] = (int)g;
      local[(std::size_t)v] = next++;
    }
  std::vector<char> in_y((std::size_t)t.total_vertices(), 0);
  for (int x : y) {
    in_y[(std::size_t)x] = 1;
    local[(std::size_t)x] = next++;
  }

  CoverProblem p;
  p.universe = next;
  for (int v = 0; v < next; ++v) p.target.push_back(v);
  std::vector<ColoredEdge> pool;
  std::vector<int> seen((std::size_t)groups.size(), -1);
  for (std::size_t id = 0; id < t.edges().size(); ++id) {
    const ColoredEdge& e = t.edges()[id];
    if (!in_y[(std::size_t)t.color_vertex(e.color)]) continue;
    bool ok = true;
    for (int v : e.base) {
      int g = group_of[(std::size_t)v];
      if (g < 0 || seen[(std::size_t)g] == (int)id) {
        ok = false;
        break;
      }
      seen[(std::size_t)g] = (int)id;
    }
    if (!ok) continue;
    std::vector<int> set;
    for (int v : e.base) set.push_back(local[(std::size_t)v]);
    set.push_back(local[(std::size_t)t.color_vertex(e.color)]);
    std::sort(set.begin(), set.end());
    p.sets.push_back(set);
    pool.push_back(e);
  }

  CoverOutcome found = cover_find(p, budget.max_nodes);
  out.status = found.status;
  if (found.status == SolveStatus::found)
    for (int id : found.chosen) out.matching.push_back(pool[(std::size_t)id]);
  return out;
}

}  // namespace

ExtremalOutcome solve_extremal(const RainbowFamily& family, double epsilon,
                               const ExtremalParams& params) {
  ExtremalOutcome out;
  ColoredGraph t = build_rainbow_graph(family);
  int n = t.base_count();
  int k = t.arity();

  try {
    out.closeness = closeness_to_ext(t, true);
  } catch (const contract_error&) {
    out.closeness = closeness_to_ext(t, false, params.closeness_samples, params.seed);
  }
  const VertexPartition& w = out.closeness.witness;

  auto finish = [&](const char* phase, std::string detail) -> ExtremalOutcome& {
    out.phase = phase;
    out.detail = std::move(detail);
    return out;
  };

  for (bool done = false; !done; done = true) {
    if (out.closeness.epsilon() > epsilon) {
      finish("closeness", "measured epsilon " + std::to_string(out.closeness.epsilon()) +
                              " above the requested " + std::to_string(epsilon));
      break;
    }

    std::vector<char> in_a((std::size_t)n, 0);
    for (int v : w.a) in_a[(std::size_t)v] = 1;
    long long outside = 0;
    for (const ColoredEdge& e : t.edges()) {
      int m = 0;
      for (int v : e.base) m += in_a[(std::size_t)v];
      if ((m & 1) != w.i) ++outside;
    }
    if (outside == 0) {
      // every edge lies in an obstructed parity pattern, so no perfect
      // matching can exist; this is a certificate, not a search result
      out.status = SolveStatus::none;
      out.detail = "all edges inside the obstructed pattern";
      return out;
    }

    double eps_prime = std::sqrt(std::pow((double)(k + 1), k + 1) * out.closeness.epsilon());
    std::vector<Hypergraph> pattern_layers((std::size_t)(n / k),
                                           build_parity_hypergraph(n, k, w.a, w.i));
    ColoredGraph ref = build_rainbow_graph(RainbowFamily(n, k, pattern_layers));
    GoodnessReport census = good_vertices(t.as_hypergraph(), ref.as_hypergraph(), eps_prime);
    if ((int)census.bad.size() > n / (4 * (k + 1))) {
      finish("goodness", std::to_string(census.bad.size()) +
                             " vertices miss too many pattern edges; not extremal enough");
      break;
    }

    RepairOutcome repair = remove_bad_vertices(t, census.bad, w, params.repair_budget);
    if (!repair.ok) {
      finish("repair", repair.why);
      break;
    }
    std::vector<int> removed;
    for (const ColoredEdge& e : repair.matching)
      for (int v : t.edge_vertices(e)) removed.push_back(v);
    std::sort(removed.begin(), removed.end());

    // the complement side describes the same pattern, so both are fair plans
    std::vector<int> b;
    for (int v = 0; v < n; ++v)
      if (!in_a[(std::size_t)v]) b.push_back(v);
    std::vector<std::pair<std::vector<int>, int>> variants = {{w.a, w.i},
                                                              {b, (w.i + k) % 2}};
    PlanOutcome plan;
    std::string plan_why;
    for (auto& [side, parity] : variants) {
      try {
        plan = build_partition_plan(t, removed, side, parity);
      } catch (const contract_error& e) {
        plan_why = e.what();
        continue;
      }
      if (plan.ok) break;
      plan_why = plan.why;
    }
    if (!plan.ok) {
      finish("plan", plan_why);
      break;
    }

    SubSolve first = solve_group(t, plan.plan.y1, plan.plan.t_groups, params.solve_budget);
    SubSolve second = solve_group(t, plan.plan.y2, plan.plan.s_groups, params.solve_budget);
    if (first.status != SolveStatus::found || second.status != SolveStatus::found) {
      finish("subproblem",
             std::string("transversal subproblems came back ") + to_string(first.status) +
                 " and " + to_string(second.status));
      break;
    }

    std::vector<ColoredEdge> full = repair.matching;
    for (const ColoredEdge& e : plan.plan.seam) full.push_back(e);
    for (const ColoredEdge& e : first.matching) full.push_back(e);
    for (const ColoredEdge& e : second.matching) full.push_back(e);
    std::string why;
    if (!verify_colored_matching(t, full, true, &why)) {
      finish("verify", why);
      break;
    }
    out.status = SolveStatus::found;
    out.assignment = rainbow_of_pm(t, full);
    return out;
  }

  if (family.n <= params.fallback_n) {
    RainbowOutcome exact = find_rainbow_pm(family, params.solve_budget);
    out.used_fallback = true;
    if (exact.status == SolveStatus::found) {
      out.detail = "fallback after " + out.phase + ": " + out.detail;
      out.phase.clear();
      out.status = SolveStatus::found;
      out.assignment = exact.assignment;
    } else if (exact.status == SolveStatus::none) {
      out.status = SolveStatus::none;
      out.detail = "fallback proof after " + out.phase + ": " + out.detail;
      out.phase.clear();
    } else {
      out.status = SolveStatus::timeout;
      out.phase = "fallback-exact";
    }
    return out;
  }

  out.status = SolveStatus::timeout;
  return out;
}

}  // namespace rainbow
