#pragma once

#include <cstdint>
#include <vector>

namespace rainbow {

enum class SolveStatus { found, none, timeout };

const char* to_string(SolveStatus s);

/// Exact-cover engine shared by the matching solvers. `sets` are sorted
/// vertex lists over [0, universe); only sets fully inside `target` are
/// usable, and a solution covers every target vertex exactly once.
struct CoverProblem {
  int universe = 0;
  std::vector<std::vector<int>> sets;
  std::vector<int> target;
};

struct CoverOutcome {
  SolveStatus status = SolveStatus::none;
  std::vector<int> chosen;  // indices into CoverProblem::sets
  std::uint64_t nodes = 0;
};

struct CoverCountOutcome {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  bool exact = true;  // false when the node budget ran out first
};

struct CoverMaxOutcome {
  int size = 0;
  std::uint64_t nodes = 0;
  bool exact = true;
};

/// Backtracking search. With fail_first the branch vertex is an uncovered
/// target vertex of minimum live degree; otherwise the lowest uncovered
/// target vertex. Edges are always tried in input order, so a fixed
/// problem yields a fixed witness.
CoverOutcome cover_find(const CoverProblem& p, std::uint64_t max_nodes, bool fail_first = true);

/// Counts all exact covers. The pivot rule does not affect the count.
CoverCountOutcome cover_count(const CoverProblem& p, std::uint64_t max_nodes, bool fail_first = true);

/// Maximum number of pairwise disjoint usable sets (branch and bound).
CoverMaxOutcome cover_max_disjoint(const CoverProblem& p, std::uint64_t max_nodes);

}  // namespace rainbow
