#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/closeness.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

struct RepairOutcome {
  bool ok = false;
  std::vector<ColoredEdge> matching;  // covers u, one u-vertex per edge, size <= |u|+1
  std::string why;
};

/// Matching that covers every bad vertex and leaves the residual partition
/// with the parity a perfect matching of the pattern needs. Backtracks over
/// edge choices and an optional extra parity-fix edge. The cap defaults to
/// n/(4(k+1)); a larger u is rejected as a contract violation.
RepairOutcome remove_bad_vertices(const ColoredGraph& t, const std::vector<int>& u,
                                  const VertexPartition& w, std::uint64_t budget = 50'000,
                                  int cap = -1);

struct PartitionPlan {
  int case_id = 0;  // 1: i=0 k even, 2: i=0 k odd, 3: i=1 k even, 4: i=1 k odd
  int r = 0;
  int s = 0;
  std::vector<int> y1, y2, y3;             // color vertices, global ids
  std::vector<std::vector<int>> t_groups;  // k groups matched against y1
  std::vector<std::vector<int>> s_groups;  // k groups matched against y2
  std::vector<ColoredEdge> seam;           // 1 edge (cases 1,2,4) or 2 (case 3)
};

struct PlanOutcome {
  bool ok = false;
  PartitionPlan plan;
  std::string why;
};

/// Splits the residual graph (everything outside `removed`) into two
/// transversal subproblems plus the seam edge(s), following the case picked
/// by (i, parity of k). Throws contract_error when the residual parity is
/// wrong or the size equations cannot hold; missing seam edges are a plain
/// failure with diagnostics.
PlanOutcome build_partition_plan(const ColoredGraph& t, const std::vector<int>& removed,
                                 const std::vector<int>& a, int i);

struct ExtremalParams {
  int fallback_n = 12;
  std::uint64_t repair_budget = 50'000;
  Budget solve_budget;
  int closeness_samples = 10'000;
  std::uint64_t seed = 1;
};

struct ExtremalOutcome {
  SolveStatus status = SolveStatus::timeout;
  std::optional<std::vector<Edge>> assignment;
  std::string phase;   // closeness, goodness, repair, plan, subproblem, verify, fallback-exact
  std::string detail;
  ClosenessReport closeness;
  bool used_fallback = false;
};

/// Constructive solver for families close to the extremal pattern: gate on
/// measured closeness, repair bad vertices, partition, solve the two
/// transversal subproblems exactly, assemble and verify. Returns "none" only
/// with a parity certificate (no edges outside the pattern) or an exhaustive
/// fallback solve; every other failure keeps its phase tag.
ExtremalOutcome solve_extremal(const RainbowFamily& family, double epsilon,
                               const ExtremalParams& params = {});

}  // namespace rainbow
