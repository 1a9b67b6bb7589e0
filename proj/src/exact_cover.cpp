#include "rainbow/exact_cover.hpp"

#include <algorithm>
#include <climits>

#include "rainbow/errors.hpp"

namespace rainbow {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::found: return "found";
    case SolveStatus::none: return "none";
    case SolveStatus::timeout: return "timeout";
  }
  return "?";
}

namespace {

struct Mask64 {
  std::uint64_t b = 0;
  static Mask64 zero(int) { return {}; }
  void set(int i) { b |= std::uint64_t{1} << i; }
  bool test(int i) const { return (b >> i) & 1; }
  bool disjoint(const Mask64& o) const { return (b & o.b) == 0; }
  void add(const Mask64& o) { b |= o.b; }
  void remove(const Mask64& o) { b &= ~o.b; }
  bool equal(const Mask64& o) const { return b == o.b; }
};

struct MaskWide {
  std::vector<std::uint64_t> b;
  static MaskWide zero(int n) { return {std::vector<std::uint64_t>((std::size_t)(n + 63) / 64, 0)}; }
  void set(int i) { b[(std::size_t)i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(int i) const { return (b[(std::size_t)i / 64] >> (i % 64)) & 1; }
  bool disjoint(const MaskWide& o) const {
    for (std::size_t w = 0; w < b.size(); ++w)
      if (b[w] & o.b[w]) return false;
    return true;
  }
  void add(const MaskWide& o) {
    for (std::size_t w = 0; w < b.size(); ++w) b[w] |= o.b[w];
  }
  void remove(const MaskWide& o) {
    for (std::size_t w = 0; w < b.size(); ++w) b[w] &= ~o.b[w];
  }
  bool equal(const MaskWide& o) const { return b == o.b; }
};

// Sets not contained in the target can never be used; drop them up front
// and remember original indices for the witness.
struct Filtered {
  std::vector<std::vector<int>> sets;   // filtered, original vertex ids
  std::vector<int> original;            // filtered id -> input id
  std::vector<std::vector<int>> incident;  // target vertex -> filtered ids
};

Filtered filter_sets(const CoverProblem& p) {
  if (p.universe < 0) throw contract_error("cover: negative universe");
  std::vector<char> in_target((std::size_t)p.universe, 0);
  int prev = -1;
  for (int v : p.target) {
    if (v < 0 || v >= p.universe) throw contract_error("cover: target vertex out of range");
    if (v <= prev) throw contract_error("cover: target not sorted");
    prev = v;
    in_target[(std::size_t)v] = 1;
  }
  Filtered f;
  f.incident.resize((std::size_t)p.universe);
  for (std::size_t i = 0; i < p.sets.size(); ++i) {
    bool ok = !p.sets[i].empty();
    for (int v : p.sets[i]) {
      if (v < 0 || v >= p.universe) throw contract_error("cover: set vertex out of range");
      if (!in_target[(std::size_t)v]) ok = false;
    }
    if (!ok) continue;
    int id = (int)f.sets.size();
    f.sets.push_back(p.sets[i]);
    f.original.push_back((int)i);
    for (int v : p.sets[i]) f.incident[(std::size_t)v].push_back(id);
  }
  return f;
}

template <class M>
struct Search {
  const Filtered& f;
  const std::vector<int>& target;
  std::vector<M> masks;
  M covered;
  M goal;
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes;
  bool fail_first;
  bool out_of_budget = false;
  std::vector<int> chosen;

  Search(const Filtered& f_, const CoverProblem& p, std::uint64_t budget, bool ff)
      : f(f_), target(p.target), covered(M::zero(p.universe)), goal(M::zero(p.universe)),
        max_nodes(budget), fail_first(ff) {
    masks.reserve(f.sets.size());
    for (const auto& s : f.sets) {
      M m = M::zero(p.universe);
      for (int v : s) m.set(v);
      masks.push_back(m);
    }
    for (int v : target) goal.set(v);
  }

  int pick_pivot() const {
    if (!fail_first) {
      for (int v : target)
        if (!covered.test(v)) return v;
      return -1;
    }
    int pivot = -1;
    int best = INT_MAX;
    for (int v : target) {
      if (covered.test(v)) continue;
      int live = 0;
      for (int id : f.incident[(std::size_t)v]) {
        if (covered.disjoint(masks[(std::size_t)id]) && ++live >= best) break;
      }
      if (live < best) {
        best = live;
        pivot = v;
        if (best == 0) break;
      }
    }
    return pivot;
  }

  bool find() {
    if (covered.equal(goal)) return true;
    if (++nodes > max_nodes) {
      out_of_budget = true;
      return false;
    }
    int pivot = pick_pivot();
    for (int id : f.incident[(std::size_t)pivot]) {
      const M& m = masks[(std::size_t)id];
      if (!covered.disjoint(m)) continue;
      covered.add(m);
      chosen.push_back(id);
      if (find()) return true;
      chosen.pop_back();
      covered.remove(m);
      if (out_of_budget) return false;
    }
    return false;
  }

  // Every exact cover uses exactly one set through the pivot vertex, so
  // branching on any uncovered vertex partitions the covers.
  std::uint64_t count() {
    if (covered.equal(goal)) return 1;
    if (++nodes > max_nodes) {
      out_of_budget = true;
      return 0;
    }
    int pivot = pick_pivot();
    std::uint64_t total = 0;
    for (int id : f.incident[(std::size_t)pivot]) {
      const M& m = masks[(std::size_t)id];
      if (!covered.disjoint(m)) continue;
      covered.add(m);
      total += count();
      covered.remove(m);
      if (out_of_budget) break;
    }
    return total;
  }

  int best_size = 0;
  int free_count = 0;
  int min_arity = 1;

  void max_disjoint(std::size_t from, int size) {
    if (size > best_size) best_size = size;
    if (size + free_count / min_arity <= best_size) return;
    if (++nodes > max_nodes) {
      out_of_budget = true;
      return;
    }
    for (std::size_t id = from; id < masks.size(); ++id) {
      const M& m = masks[(std::size_t)id];
      if (!covered.disjoint(m)) continue;
      int arity = (int)f.sets[id].size();
      covered.add(m);
      free_count -= arity;
      max_disjoint(id + 1, size + 1);
      free_count += arity;
      covered.remove(m);
      if (out_of_budget) return;
    }
  }
};

template <class M>
CoverOutcome run_find(const CoverProblem& p, const Filtered& f, std::uint64_t max_nodes, bool ff) {
  Search<M> s(f, p, max_nodes, ff);
  CoverOutcome out;
  if (s.find()) {
    out.status = SolveStatus::found;
    out.chosen.reserve(s.chosen.size());
    for (int id : s.chosen) out.chosen.push_back(f.original[(std::size_t)id]);
    std::sort(out.chosen.begin(), out.chosen.end());
  } else {
    out.status = s.out_of_budget ? SolveStatus::timeout : SolveStatus::none;
  }
  out.nodes = s.nodes;
  return out;
}

template <class M>
CoverCountOutcome run_count(const CoverProblem& p, const Filtered& f, std::uint64_t max_nodes, bool ff) {
  Search<M> s(f, p, max_nodes, ff);
  CoverCountOutcome out;
  out.count = s.count();
  out.nodes = s.nodes;
  out.exact = !s.out_of_budget;
  return out;
}

template <class M>
CoverMaxOutcome run_max(const CoverProblem& p, const Filtered& f, std::uint64_t max_nodes) {
  Search<M> s(f, p, max_nodes, true);
  s.free_count = (int)p.target.size();
  if (!f.sets.empty()) {
    s.min_arity = INT_MAX;
    for (const auto& set : f.sets) s.min_arity = std::min(s.min_arity, (int)set.size());
  }
  s.max_disjoint(0, 0);
  CoverMaxOutcome out;
  out.size = s.best_size;
  out.nodes = s.nodes;
  out.exact = !s.out_of_budget;
  return out;
}

}  // namespace

CoverOutcome cover_find(const CoverProblem& p, std::uint64_t max_nodes, bool fail_first) {
  Filtered f = filter_sets(p);
  if (p.universe <= 64) return run_find<Mask64>(p, f, max_nodes, fail_first);
  return run_find<MaskWide>(p, f, max_nodes, fail_first);
}

CoverCountOutcome cover_count(const CoverProblem& p, std::uint64_t max_nodes, bool fail_first) {
  Filtered f = filter_sets(p);
  if (p.universe <= 64) return run_count<Mask64>(p, f, max_nodes, fail_first);
  return run_count<MaskWide>(p, f, max_nodes, fail_first);
}

CoverMaxOutcome cover_max_disjoint(const CoverProblem& p, std::uint64_t max_nodes) {
  Filtered f = filter_sets(p);
  if (p.universe <= 64) return run_max<Mask64>(p, f, max_nodes);
  return run_max<MaskWide>(p, f, max_nodes);
}

}  // namespace rainbow
