#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rainbow/exact_cover.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

/// Node budget for the backtracking solvers. The default comes from the
/// RAINBOW_MATCH_BUDGET environment variable when set, else 50 million
/// search nodes.
struct Budget {
  std::uint64_t max_nodes;
  Budget();
  explicit Budget(std::uint64_t n) : max_nodes(n) {}
};

struct SolverOptions {
  bool fail_first = true;  // off: branch on the lowest uncovered vertex
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::none;
  std::optional<std::vector<Edge>> matching;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

struct ColoredSolveOutcome {
  SolveStatus status = SolveStatus::none;
  std::optional<std::vector<ColoredEdge>> matching;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

struct RainbowOutcome {
  SolveStatus status = SolveStatus::none;
  std::optional<std::vector<Edge>> assignment;  // assignment[c] comes from layer c
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

struct CountOutcome {
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

struct MaxMatchingOutcome {
  int size = 0;
  std::uint64_t nodes = 0;
};

SolveOutcome find_perfect_matching(const Hypergraph& h, Budget budget = Budget(),
                                   SolverOptions opts = SolverOptions());
ColoredSolveOutcome find_perfect_matching(const ColoredGraph& t, Budget budget = Budget(),
                                          SolverOptions opts = SolverOptions());

/// Exhausting the budget raises resource_error with the partial tally so
/// far; a normal return is an exact count.
CountOutcome count_perfect_matchings(const Hypergraph& h, Budget budget = Budget(),
                                     SolverOptions opts = SolverOptions());
CountOutcome count_perfect_matchings(const ColoredGraph& t, Budget budget = Budget(),
                                     SolverOptions opts = SolverOptions());

/// Largest matching size; resource_error carries the best size seen when
/// the budget runs out.
MaxMatchingOutcome max_matching_size(const Hypergraph& h, Budget budget = Budget());

/// Direct search for a rainbow perfect matching: picks one edge per layer,
/// all pairwise disjoint, covering the ground set. Independent of the
/// colored-graph reduction on purpose.
RainbowOutcome find_rainbow_pm(const RainbowFamily& family, Budget budget = Budget());

}  // namespace rainbow
