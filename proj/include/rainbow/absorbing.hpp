#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/solver.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

/// True iff some matching of T covers exactly V(E) ∪ V(A) where A is the
/// union of a_edges (one edge: order 1, two disjoint edges: order 2). E is a
/// balanced (k+1)-set of global vertex ids, not necessarily an edge of T.
/// Throws contract_error if E is not balanced, a_edges are not edges of T,
/// or the pieces overlap.
bool is_absorber(const std::vector<ColoredEdge>& a_edges, const std::vector<int>& e,
                 const ColoredGraph& t);

/// Matching of T covering exactly the given global vertex set, if one exists.
/// Exhaustive over the edges inside the set.
std::optional<std::vector<ColoredEdge>> cover_exactly(const ColoredGraph& t,
                                                      const std::vector<int>& vertices);

struct AbsorberCensus {
  std::vector<int> e;
  int order = 1;
  bool exact = true;
  long long count = 0;     // exact mode: number of distinct absorber vertex sets
  double estimate = 0;     // sampled mode: estimated count with standard error
  double std_error = 0;
  std::vector<std::vector<int>> found;  // re-verified absorber vertex sets, capped
};

/// Counts order-1 or order-2 absorbers for E. Exact mode enumerates every
/// candidate (edges, or unordered edge pairs) and throws resource_error when
/// that exceeds the budget; sampled mode draws `budget` random candidates and
/// reports an estimate with its standard error.
AbsorberCensus count_absorbers(const std::vector<int>& e, const ColoredGraph& t, int order,
                               bool exact, std::uint64_t budget, std::uint64_t seed = 1);

/// Uniformly random matching of t disjoint set_size-subsets of
/// {0, ..., universe-1}: draws t*set_size distinct vertices, shuffles, chunks.
std::vector<std::vector<int>> sample_random_matching(int universe, int set_size, int t,
                                                     std::uint64_t seed);

struct SampleStats {
  int t = 0;
  double theta = 0;
  std::vector<int> eta;  // per sample: how many matching sets landed in the family

  double mean() const;
  /// Empirical Pr[|eta - theta*t| >= 2*gamma*sqrt(t)].
  double tail_fraction(double gamma) const;
};

/// Draws `samples` independent random t-matchings and records eta for the
/// family given as a membership test over sorted sets; theta is the family
/// density used as the reference point of the stats.
SampleStats fk_sample(int universe, int set_size, int t, int samples,
                      const std::function<bool(const std::vector<int>&)>& in_family, double theta,
                      std::uint64_t seed);

/// The first `keep` sets of given size in colexicographic order; density is
/// exactly keep / C(universe, set_size).
struct PrefixFamily {
  int universe = 0;
  int set_size = 0;
  long long keep = 0;

  static PrefixFamily with_density(int universe, int set_size, double theta);
  bool contains(const std::vector<int>& s) const;
  double density() const;
};

/// Pseudorandom family keeping each set independently with chance theta,
/// decided by hashing the set's contents.
std::function<bool(const std::vector<int>&)> hashed_family(double theta, std::uint64_t seed);

struct PipelineParams {
  double gamma = 0.2;      // absorbing reserve density, 0 < gamma < 1
  double xi = 0.05;        // almost-cover slack, 0 < xi < 1
  std::uint64_t seed = 1;
  int fallback_n = 12;     // exact solve rescues failures up to this base size
  int probes = 200;        // balanced probe sets per reserve candidate
  int restarts = 5;
  std::uint64_t exchange_budget = 200'000;
  int l = 0;               // 0 means ceil(k/2)
};

struct ReserveGroup {
  ColoredEdge e1, e2;         // the group's own 2-edge matching
  std::vector<int> vertices;  // sorted union, 2(k+1) global ids
};

/// Random reserve of disjoint 2(k+1)-vertex groups, each a 2-edge matching of
/// T that absorbs at least one of `probes` random balanced sets. Covers at
/// most gamma * (n + m) vertices. May be empty.
std::vector<ReserveGroup> build_absorbing_family(const ColoredGraph& t,
                                                 const PipelineParams& params);

/// All (k-l)-subsets of V(M) that extend S to an edge of T while meeting each
/// matching edge at most once. S is one color vertex plus l base vertices,
/// all uncovered by M (else contract_error).
std::vector<std::vector<int>> compute_L_S(const ColoredGraph& t,
                                          const std::vector<ColoredEdge>& m,
                                          const std::vector<int>& s);

/// Greedy maximal matching improved by exchange augmentation: replace k-l
/// matching edges by k-l+1 edges built from uncovered vertices and
/// transversals of the removed part. Stops on perfect cover, on uncovered
/// <= xi * (usable vertices), or when the budget of candidate exchanges is
/// spent. Vertices in `avoid` are never touched and never counted uncovered.
std::vector<ColoredEdge> almost_cover(const ColoredGraph& t, double xi, std::uint64_t budget,
                                      int l = 0, std::uint64_t seed = 1,
                                      const std::vector<int>& avoid = {});

struct AbsorbOutcome {
  bool ok = false;
  std::vector<ColoredEdge> matching;     // covers V(reserve) ∪ U when ok
  std::vector<std::vector<int>> stuck;   // balanced (k+1)-sets left unabsorbed
};

/// Partitions U into balanced (k+1)-sets and assigns each to an unused
/// reserve group that absorbs it, greedily with backtracking. Unused groups
/// contribute their own 2-edge matchings, so on success the result covers
/// V(reserve) ∪ U exactly.
AbsorbOutcome absorb(const std::vector<ReserveGroup>& reserve, const std::vector<int>& u,
                     const ColoredGraph& t);

struct PipelineOutcome {
  SolveStatus status = SolveStatus::timeout;
  std::optional<std::vector<Edge>> assignment;  // per-layer edges on success
  std::string phase;                            // failing phase when not found
  std::string detail;
  int attempts = 0;
  bool used_fallback = false;
};

/// Reserve, almost-cover the rest, absorb the leftovers; restarts with fresh
/// seeds on failure, and rescues small instances with the exact solver.
/// "none" only ever comes from an exhaustive solve.
PipelineOutcome run_absorbing_pipeline(const RainbowFamily& family, const PipelineParams& params);

}  // namespace rainbow
