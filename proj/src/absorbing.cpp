#include "rainbow/absorbing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/exact_cover.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

namespace {

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sorted_disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    (a[i] < b[j]) ? ++i : ++j;
  }
  return true;
}

void require_balanced_set(const std::vector<int>& e, const ColoredGraph& t) {
  int k = t.arity();
  if ((int)e.size() != k + 1) throw contract_error("balanced set must have k+1 vertices");
  std::vector<int> s = e;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw contract_error("balanced set has repeated vertices");
  if (s.front() < 0 || s.back() >= t.total_vertices())
    throw contract_error("balanced set vertex out of range");
  if (!is_balanced(s, t.base_count(), k)) throw contract_error("set is not balanced");
}

}  // namespace

std::optional<std::vector<ColoredEdge>> cover_exactly(const ColoredGraph& t,
                                                      const std::vector<int>& vertices) {
  std::vector<int> s = vertices;
  std::sort(s.begin(), s.end());
  std::vector<int> local((std::size_t)t.total_vertices(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) local[(std::size_t)s[i]] = (int)i;

  CoverProblem p;
  p.universe = (int)s.size();
  for (int i = 0; i < p.universe; ++i) p.target.push_back(i);

  // only colors whose vertex is inside the set can contribute edges
  std::vector<ColoredEdge> pool;
  for (int v : s) {
    if (v < t.base_count()) continue;
    int c = v - t.base_count();
    auto [from, to] = t.color_range(c);
    for (int id = from; id < to; ++id) {
      const ColoredEdge& e = t.edges()[(std::size_t)id];
      bool inside = true;
      std::vector<int> set;
      for (int u : e.base) {
        if (local[(std::size_t)u] < 0) {
          inside = false;
          break;
        }
        set.push_back(local[(std::size_t)u]);
      }
      if (!inside) continue;
      set.push_back(local[(std::size_t)t.color_vertex(c)]);
      std::sort(set.begin(), set.end());
      p.sets.push_back(set);
      pool.push_back(e);
    }
  }

  CoverOutcome out = cover_find(p, 1'000'000);
  if (out.status != SolveStatus::found) return std::nullopt;
  std::vector<ColoredEdge> q;
  for (int id : out.chosen) q.push_back(pool[(std::size_t)id]);
  return q;
}

bool is_absorber(const std::vector<ColoredEdge>& a_edges, const std::vector<int>& e,
                 const ColoredGraph& t) {
  require_balanced_set(e, t);
  if (a_edges.size() != 1 && a_edges.size() != 2)
    throw contract_error("an absorber is one or two edges");
  std::vector<int> es = e;
  std::sort(es.begin(), es.end());
  std::vector<int> all = es;
  for (const ColoredEdge& a : a_edges) {
    if (!t.contains(a)) throw contract_error("absorber edge not in the graph");
    std::vector<int> av = t.edge_vertices(a);
    if (!sorted_disjoint(all, av)) throw contract_error("absorber pieces overlap");
    all = sorted_union(all, av);
  }
  return cover_exactly(t, all).has_value();
}

AbsorberCensus count_absorbers(const std::vector<int>& e, const ColoredGraph& t, int order,
                               bool exact, std::uint64_t budget, std::uint64_t seed) {
  require_balanced_set(e, t);
  if (order != 1 && order != 2) throw contract_error("absorber order must be 1 or 2");
  if (budget == 0) throw contract_error("budget must be positive");

  AbsorberCensus census;
  census.e = e;
  std::sort(census.e.begin(), census.e.end());
  census.order = order;
  census.exact = exact;

  const std::vector<ColoredEdge>& edges = t.edges();
  long long ec = (long long)edges.size();
  std::vector<std::vector<int>> verts((std::size_t)ec);
  for (std::size_t i = 0; i < edges.size(); ++i) verts[i] = t.edge_vertices(edges[i]);

  auto absorbs1 = [&](long long i) {
    if (!sorted_disjoint(census.e, verts[(std::size_t)i])) return false;
    return cover_exactly(t, sorted_union(census.e, verts[(std::size_t)i])).has_value();
  };
  auto absorbs2 = [&](long long i, long long j) {
    if (!sorted_disjoint(verts[(std::size_t)i], verts[(std::size_t)j])) return false;
    if (!sorted_disjoint(census.e, verts[(std::size_t)i])) return false;
    if (!sorted_disjoint(census.e, verts[(std::size_t)j])) return false;
    std::vector<int> a = sorted_union(verts[(std::size_t)i], verts[(std::size_t)j]);
    return cover_exactly(t, sorted_union(census.e, a)).has_value();
  };
  auto record = [&](const std::vector<int>& a) {
    if ((int)census.found.size() < 100) census.found.push_back(a);
  };

  if (exact) {
    if (order == 1) {
      if ((std::uint64_t)ec > budget) throw resource_error("absorber enumeration over budget");
      for (long long i = 0; i < ec; ++i)
        if (absorbs1(i)) {
          ++census.count;
          record(verts[(std::size_t)i]);
        }
    } else {
      if ((std::uint64_t)(ec * (ec - 1) / 2) > budget)
        throw resource_error("absorber pair enumeration over budget");
      std::set<std::vector<int>> distinct;
      for (long long i = 0; i < ec; ++i)
        for (long long j = i + 1; j < ec; ++j)
          if (absorbs2(i, j)) {
            std::vector<int> a = sorted_union(verts[(std::size_t)i], verts[(std::size_t)j]);
            if (distinct.insert(a).second) record(a);
          }
      census.count = (long long)distinct.size();
    }
    return census;
  }

  Rng rng = Rng(seed).derive(0xCA);
  long long hits = 0;
  long long draws = (long long)budget;
  double population;
  if (order == 1) {
    population = (double)ec;
    for (long long d = 0; d < draws && ec > 0; ++d) {
      long long i = (long long)rng.below((std::uint64_t)ec);
      if (absorbs1(i)) {
        ++hits;
        record(verts[(std::size_t)i]);
      }
    }
  } else {
    population = (double)ec * (double)(ec - 1) / 2.0;
    for (long long d = 0; d < draws && ec > 1; ++d) {
      long long i = (long long)rng.below((std::uint64_t)ec);
      long long j = (long long)rng.below((std::uint64_t)(ec - 1));
      if (j >= i) ++j;
      if (absorbs2(std::min(i, j), std::max(i, j))) {
        ++hits;
        record(sorted_union(verts[(std::size_t)std::min(i, j)], verts[(std::size_t)std::max(i, j)]));
      }
    }
  }
  double p = draws > 0 ? (double)hits / (double)draws : 0.0;
  census.estimate = p * population;
  census.std_error = population * std::sqrt(p * (1 - p) / (double)std::max<long long>(draws, 1));
  census.count = (long long)std::llround(census.estimate);
  return census;
}

namespace {

std::vector<std::vector<int>> draw_matching(Rng& rng, int universe, int set_size, int t) {
  std::vector<int> ids = rng.sample_distinct(universe, t * set_size);
  rng.shuffle(ids);
  std::vector<std::vector<int>> groups((std::size_t)t);
  for (int g = 0; g < t; ++g) {
    groups[(std::size_t)g].assign(ids.begin() + (std::size_t)g * set_size,
                                  ids.begin() + (std::size_t)(g + 1) * set_size);
    std::sort(groups[(std::size_t)g].begin(), groups[(std::size_t)g].end());
  }
  return groups;
}

}  // namespace

std::vector<std::vector<int>> sample_random_matching(int universe, int set_size, int t,
                                                     std::uint64_t seed) {
  if (set_size < 1 || t < 0) throw contract_error("matching sample sizes must be positive");
  if ((long long)t * set_size > universe) throw contract_error("universe too small for the matching");
  Rng rng(seed);
  return draw_matching(rng, universe, set_size, t);
}

double SampleStats::mean() const {
  if (eta.empty()) return 0;
  long long sum = 0;
  for (int x : eta) sum += x;
  return (double)sum / (double)eta.size();
}

double SampleStats::tail_fraction(double gamma) const {
  if (eta.empty()) return 0;
  double bound = 2.0 * gamma * std::sqrt((double)t);
  long long far = 0;
  for (int x : eta)
    if (std::abs((double)x - theta * t) >= bound) ++far;
  return (double)far / (double)eta.size();
}

SampleStats fk_sample(int universe, int set_size, int t, int samples,
                      const std::function<bool(const std::vector<int>&)>& in_family, double theta,
                      std::uint64_t seed) {
  if (samples < 1) throw contract_error("need at least one sample");
  if ((long long)t * set_size > universe) throw contract_error("universe too small for the matching");
  SampleStats stats;
  stats.t = t;
  stats.theta = theta;
  stats.eta.reserve((std::size_t)samples);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<std::vector<int>> groups = draw_matching(rng, universe, set_size, t);
    int eta = 0;
    for (const std::vector<int>& g : groups)
      if (in_family(g)) ++eta;
    stats.eta.push_back(eta);
  }
  return stats;
}

PrefixFamily PrefixFamily::with_density(int universe, int set_size, double theta) {
  if (theta < 0 || theta > 1) throw contract_error("density must lie in [0, 1]");
  PrefixFamily f;
  f.universe = universe;
  f.set_size = set_size;
  long long total = binomial(universe, set_size);
  f.keep = std::clamp((long long)std::llround(theta * (double)total), 0LL, total);
  return f;
}

bool PrefixFamily::contains(const std::vector<int>& s) const {
  if ((int)s.size() != set_size) return false;
  return colex_rank(s) < keep;
}

double PrefixFamily::density() const {
  long long total = binomial(universe, set_size);
  return total ? (double)keep / (double)total : 0.0;
}

std::function<bool(const std::vector<int>&)> hashed_family(double theta, std::uint64_t seed) {
  if (theta < 0 || theta > 1) throw contract_error("density must lie in [0, 1]");
  return [theta, seed](const std::vector<int>& s) {
    std::uint64_t h = fnv1a64(s.data(), s.size() * sizeof(int));
    double u = (double)(Rng(h ^ seed).next_u64() >> 11) * 0x1.0p-53;
    return u < theta;
  };
}

namespace {

void require_params(const PipelineParams& params) {
  if (params.gamma <= 0 || params.gamma >= 1) throw contract_error("gamma must lie in (0, 1)");
  if (params.xi <= 0 || params.xi >= 1) throw contract_error("xi must lie in (0, 1)");
  if (params.probes < 1) throw contract_error("need at least one probe");
}

// random balanced (k+1)-set avoiding `taken`; empty on too many rejections
std::vector<int> random_balanced_probe(const ColoredGraph& t, const std::vector<char>& taken,
                                       Rng& rng) {
  int n = t.base_count();
  int k = t.arity();
  for (int tries = 0; tries < 80; ++tries) {
    int c = rng.below_int(t.color_count());
    if (taken[(std::size_t)t.color_vertex(c)]) continue;
    std::vector<int> base = rng.sample_distinct(n, k);
    bool free = true;
    for (int v : base) free = free && !taken[(std::size_t)v];
    if (!free) continue;
    base.push_back(t.color_vertex(c));
    return base;
  }
  return {};
}

}  // namespace

std::vector<ReserveGroup> build_absorbing_family(const ColoredGraph& t,
                                                 const PipelineParams& params) {
  require_params(params);
  int k = t.arity();
  int group_size = 2 * (k + 1);
  int n_total = t.total_vertices();
  int m_groups = (int)(params.gamma * n_total / group_size);
  if (m_groups == 0) return {};

  Rng rng = Rng(params.seed).derive(0xAB5);
  std::vector<ReserveGroup> kept;
  for (int attempt = 0; attempt <= std::max(0, params.restarts); ++attempt) {
    kept.clear();
    std::vector<std::vector<int>> groups = draw_matching(rng, n_total, group_size, m_groups);
    for (const std::vector<int>& g : groups) {
      std::optional<std::vector<ColoredEdge>> q = cover_exactly(t, g);
      if (!q || q->size() != 2) continue;
      std::vector<char> taken((std::size_t)n_total, 0);
      for (int v : g) taken[(std::size_t)v] = 1;
      for (int p = 0; p < params.probes; ++p) {
        std::vector<int> probe = random_balanced_probe(t, taken, rng);
        if (probe.empty()) break;
        std::sort(probe.begin(), probe.end());
        if (is_absorber(*q, probe, t)) {
          kept.push_back({(*q)[0], (*q)[1], g});
          break;
        }
      }
    }
    if (!kept.empty()) break;
  }
  return kept;
}

std::vector<std::vector<int>> compute_L_S(const ColoredGraph& t,
                                          const std::vector<ColoredEdge>& m,
                                          const std::vector<int>& s) {
  int n = t.base_count();
  int k = t.arity();

  std::vector<int> edge_of((std::size_t)t.total_vertices(), -1);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!t.contains(m[i])) throw contract_error("matching edge not in the graph");
    for (int v : t.edge_vertices(m[i])) {
      if (edge_of[(std::size_t)v] >= 0) throw contract_error("edges of m overlap");
      edge_of[(std::size_t)v] = (int)i;
    }
  }

  int color = -1;
  std::vector<int> s_base;
  for (int v : s) {
    if (v < 0 || v >= t.total_vertices()) throw contract_error("s vertex out of range");
    if (edge_of[(std::size_t)v] >= 0) throw contract_error("s overlaps the matching");
    if (v >= n) {
      if (color >= 0) throw contract_error("s needs exactly one color vertex");
      color = v - n;
    } else {
      s_base.push_back(v);
    }
  }
  if (color < 0) throw contract_error("s needs exactly one color vertex");
  std::sort(s_base.begin(), s_base.end());
  if (std::adjacent_find(s_base.begin(), s_base.end()) != s_base.end())
    throw contract_error("s has repeated vertices");
  int l = (int)s_base.size();
  if (l > k) throw contract_error("s has more than k base vertices");
  int d = k - l;

  std::vector<std::vector<int>> out;
  if (d == 0) {
    if (t.contains({color, s_base})) out.push_back({});
    return out;
  }

  // color vertices of V(m) can never complete an edge, only base ones matter
  std::vector<int> pool;
  for (const ColoredEdge& e : m)
    for (int v : e.base) pool.push_back(v);
  std::sort(pool.begin(), pool.end());
  if ((int)pool.size() < d) return out;

  std::vector<int> hit(m.size(), 0);
  for_each_k_subset((int)pool.size(), d, [&](const std::vector<int>& idx) {
    std::fill(hit.begin(), hit.end(), 0);
    bool ok = true;
    for (int i : idx) {
      int e = edge_of[(std::size_t)pool[(std::size_t)i]];
      if (++hit[(std::size_t)e] > 1) {
        ok = false;
        break;
      }
    }
    if (!ok) return;
    std::vector<int> chosen;
    for (int i : idx) chosen.push_back(pool[(std::size_t)i]);
    std::vector<int> base = sorted_union(s_base, chosen);
    if (t.contains({color, base})) out.push_back(chosen);
  });
  return out;
}

namespace {

struct CoverState {
  const ColoredGraph& t;
  std::vector<char> used;  // covered or off-limits global vertices
  std::vector<ColoredEdge> m;
  long long usable = 0;

  explicit CoverState(const ColoredGraph& t_, const std::vector<int>& avoid)
      : t(t_), used((std::size_t)t_.total_vertices(), 0) {
    for (int v : avoid) {
      if (v < 0 || v >= t.total_vertices()) throw contract_error("avoid vertex out of range");
      used[(std::size_t)v] = 1;
    }
    usable = t.total_vertices() - (long long)avoid.size();
  }

  long long uncovered() const { return usable - (long long)m.size() * (t.arity() + 1); }

  bool free_edge(const ColoredEdge& e) const {
    if (used[(std::size_t)t.color_vertex(e.color)]) return false;
    for (int v : e.base)
      if (used[(std::size_t)v]) return false;
    return true;
  }

  void add(const ColoredEdge& e) {
    for (int v : t.edge_vertices(e)) used[(std::size_t)v] = 1;
    m.push_back(e);
  }

  void remove_at(std::size_t i) {
    for (int v : t.edge_vertices(m[i])) used[(std::size_t)v] = 0;
    m.erase(m.begin() + (long)i);
  }
};

}  // namespace

std::vector<ColoredEdge> almost_cover(const ColoredGraph& t, double xi, std::uint64_t budget,
                                      int l, std::uint64_t seed, const std::vector<int>& avoid) {
  if (xi <= 0 || xi >= 1) throw contract_error("xi must lie in (0, 1)");
  int k = t.arity();
  int l_eff = l > 0 ? l : (k + 1) / 2;
  if (l_eff < 1 || l_eff >= k) throw contract_error("l must lie in [1, k-1]");
  int d = k - l_eff;

  CoverState st(t, avoid);
  for (const ColoredEdge& e : t.edges())
    if (st.free_edge(e)) st.add(e);

  long long stop_at = (long long)(xi * (double)st.usable);
  Rng rng = Rng(seed).derive(0xAC);
  long long budget_left = (long long)budget;
  int stale = 0;

  while (st.uncovered() > stop_at && budget_left > 0 && (int)st.m.size() >= d && stale < 10'000) {
    // uncovered colors and base vertices, rebuilt lazily after improvements
    std::vector<int> free_colors, free_base;
    for (int c = 0; c < t.color_count(); ++c)
      if (!st.used[(std::size_t)t.color_vertex(c)]) free_colors.push_back(t.color_vertex(c));
    for (int v = 0; v < t.base_count(); ++v)
      if (!st.used[(std::size_t)v]) free_base.push_back(v);
    if ((int)free_colors.size() < d + 1 || (int)free_base.size() < (d + 1) * l_eff) break;

    bool improved = false;
    while (!improved && budget_left > 0 && stale < 10'000) {
      --budget_left;
      ++stale;

      std::vector<int> picks = rng.sample_distinct((int)st.m.size(), d);
      std::vector<ColoredEdge> removed;
      for (int i : picks) removed.push_back(st.m[(std::size_t)i]);

      std::vector<char> taken((std::size_t)t.total_vertices(), 0);
      std::vector<std::vector<int>> ss;
      std::vector<std::vector<std::vector<int>>> ls;
      int tries = 30 * (d + 1);
      while ((int)ss.size() < d + 1 && tries-- > 0 && budget_left > 0) {
        int x = free_colors[(std::size_t)rng.below(free_colors.size())];
        if (taken[(std::size_t)x]) continue;
        std::vector<int> base = rng.sample_from(free_base, l_eff);
        bool clash = false;
        for (int v : base) clash = clash || taken[(std::size_t)v];
        if (clash) continue;
        std::vector<int> s = base;
        s.push_back(x);
        --budget_left;
        std::vector<std::vector<int>> lset = compute_L_S(t, removed, s);
        if (lset.empty()) continue;
        taken[(std::size_t)x] = 1;
        for (int v : base) taken[(std::size_t)v] = 1;
        ss.push_back(s);
        ls.push_back(lset);
      }
      if ((int)ss.size() < d + 1) continue;

      // pick pairwise disjoint transversals, one per S
      std::vector<int> choice((std::size_t)d + 1, -1);
      std::vector<char> tv((std::size_t)t.total_vertices(), 0);
      auto assign = [&](auto&& self, int j) -> bool {
        if (j == d + 1) return true;
        for (std::size_t c = 0; c < ls[(std::size_t)j].size(); ++c) {
          const std::vector<int>& cand = ls[(std::size_t)j][c];
          bool ok = true;
          for (int v : cand) ok = ok && !tv[(std::size_t)v];
          if (!ok) continue;
          for (int v : cand) tv[(std::size_t)v] = 1;
          choice[(std::size_t)j] = (int)c;
          if (self(self, j + 1)) return true;
          for (int v : cand) tv[(std::size_t)v] = 0;
        }
        return false;
      };
      if (!assign(assign, 0)) continue;

      std::sort(picks.rbegin(), picks.rend());
      for (int i : picks) st.remove_at((std::size_t)i);
      for (int j = 0; j <= d; ++j) {
        const std::vector<int>& s = ss[(std::size_t)j];
        std::vector<int> base(s.begin(), s.end() - 1);
        for (int v : ls[(std::size_t)j][(std::size_t)choice[(std::size_t)j]]) base.push_back(v);
        std::sort(base.begin(), base.end());
        st.add({s.back() - t.base_count(), base});
      }
      // an exchange can free vertices that plain greedy can now use
      for (const ColoredEdge& e : t.edges())
        if (st.free_edge(e)) st.add(e);
      improved = true;
      stale = 0;
    }
  }
  return st.m;
}

AbsorbOutcome absorb(const std::vector<ReserveGroup>& reserve, const std::vector<int>& u,
                     const ColoredGraph& t) {
  int n = t.base_count();
  int k = t.arity();
  std::vector<int> su = u;
  std::sort(su.begin(), su.end());
  if (std::adjacent_find(su.begin(), su.end()) != su.end())
    throw contract_error("u has repeated vertices");
  if (!su.empty() && (su.front() < 0 || su.back() >= t.total_vertices()))
    throw contract_error("u vertex out of range");
  if (!is_balanced(su, n, k)) throw contract_error("u is not balanced");
  for (const ReserveGroup& g : reserve)
    if (!sorted_disjoint(su, g.vertices)) throw contract_error("u overlaps the reserve");
  long long parts = (long long)su.size() / (k + 1);
  if (parts > (long long)reserve.size()) throw contract_error("u exceeds the reserve capacity");

  std::vector<int> colors, base;
  for (int v : su) (v >= n ? colors : base).push_back(v);
  std::vector<std::vector<int>> sets;
  for (long long i = 0; i < parts; ++i) {
    std::vector<int> e(base.begin() + i * k, base.begin() + (i + 1) * k);
    e.push_back(colors[(std::size_t)i]);
    std::sort(e.begin(), e.end());
    sets.push_back(e);
  }

  AbsorbOutcome out;
  std::vector<int> pick(sets.size(), -1);
  std::vector<char> used_group(reserve.size(), 0);
  std::vector<std::vector<ColoredEdge>> covers(sets.size());
  long long nodes = 0;
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == sets.size()) return true;
    if (++nodes > 1000) return false;
    for (std::size_t g = 0; g < reserve.size(); ++g) {
      if (used_group[g]) continue;
      std::optional<std::vector<ColoredEdge>> q =
          cover_exactly(t, sorted_union(sets[i], reserve[g].vertices));
      if (!q) continue;
      used_group[g] = 1;
      pick[i] = (int)g;
      covers[i] = *q;
      if (self(self, i + 1)) return true;
      used_group[g] = 0;
      pick[i] = -1;
    }
    return false;
  };

  if (search(search, 0)) {
    out.ok = true;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (const ColoredEdge& e : covers[i]) out.matching.push_back(e);
    for (std::size_t g = 0; g < reserve.size(); ++g) {
      if (used_group[g]) continue;
      out.matching.push_back(reserve[g].e1);
      out.matching.push_back(reserve[g].e2);
    }
    return out;
  }

  // report the genuinely stuck sets: those no group at all can absorb
  for (const std::vector<int>& e : sets) {
    bool anyone = false;
    for (const ReserveGroup& g : reserve)
      if (cover_exactly(t, sorted_union(e, g.vertices))) {
        anyone = true;
        break;
      }
    if (!anyone) out.stuck.push_back(e);
  }
  return out;
}

PipelineOutcome run_absorbing_pipeline(const RainbowFamily& family, const PipelineParams& params) {
  require_params(params);
  PipelineOutcome out;
  ColoredGraph t = build_rainbow_graph(family);
  int k = t.arity();

  for (int attempt = 0; attempt <= std::max(0, params.restarts); ++attempt) {
    out.attempts = attempt + 1;
    PipelineParams local = params;
    local.seed = Rng(params.seed).derive((std::uint64_t)attempt).next_u64();

    std::vector<ReserveGroup> reserve = build_absorbing_family(t, local);
    std::vector<int> avoid;
    for (const ReserveGroup& g : reserve)
      for (int v : g.vertices) avoid.push_back(v);

    std::vector<ColoredEdge> m =
        almost_cover(t, params.xi, params.exchange_budget, params.l, local.seed, avoid);

    std::vector<char> covered((std::size_t)t.total_vertices(), 0);
    for (int v : avoid) covered[(std::size_t)v] = 1;
    for (const ColoredEdge& e : m)
      for (int v : t.edge_vertices(e)) covered[(std::size_t)v] = 1;
    std::vector<int> leftovers;
    for (int v = 0; v < t.total_vertices(); ++v)
      if (!covered[(std::size_t)v]) leftovers.push_back(v);

    if ((long long)leftovers.size() > (long long)reserve.size() * (k + 1)) {
      out.phase = "almost-cover";
      out.detail = std::to_string(leftovers.size()) + " uncovered vertices for " +
                   std::to_string(reserve.size()) + " reserve groups";
      continue;
    }

    AbsorbOutcome ab = absorb(reserve, leftovers, t);
    if (!ab.ok) {
      out.phase = "absorb";
      out.detail = std::to_string(ab.stuck.size()) + " stuck sets of " +
                   std::to_string(leftovers.size() / (k + 1));
      continue;
    }

    std::vector<ColoredEdge> full = m;
    for (const ColoredEdge& e : ab.matching) full.push_back(e);
    std::string why;
    if (!verify_colored_matching(t, full, true, &why)) {
      out.phase = "verify";
      out.detail = why;
      continue;
    }
    out.status = SolveStatus::found;
    out.assignment = rainbow_of_pm(t, full);
    out.phase.clear();
    out.detail.clear();
    return out;
  }

  if (family.n <= params.fallback_n) {
    RainbowOutcome exact = find_rainbow_pm(family);
    out.used_fallback = true;
    out.status = exact.status;
    if (exact.status == SolveStatus::found) {
      out.assignment = exact.assignment;
      out.phase.clear();
      out.detail.clear();
    } else if (exact.status == SolveStatus::timeout) {
      out.phase = "fallback-exact";
    }
    return out;
  }

  out.status = SolveStatus::timeout;
  return out;
}

}  // namespace rainbow
