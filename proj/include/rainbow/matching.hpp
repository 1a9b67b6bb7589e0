#pragma once

#include <string>
#include <vector>

#include "rainbow/hypergraph.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

// Independent checkers, kept separate from the solvers: plain sorted-vector
// logic, no shared search state. Every witness a solver returns is expected
// to pass these.

bool is_matching(const std::vector<Edge>& edges);

bool verify_perfect_matching(const Hypergraph& h, const std::vector<Edge>& matching,
                             std::string* why = nullptr);

/// Checks membership, disjointness (colors included) and, when `perfect`,
/// exact coverage of all colors and base vertices.
bool verify_colored_matching(const ColoredGraph& t, const std::vector<ColoredEdge>& matching,
                             bool perfect, std::string* why = nullptr);

bool verify_rainbow_pm(const RainbowFamily& family, const std::vector<Edge>& assignment,
                       std::string* why = nullptr);

/// Stable content hash of a matching, independent of input order.
std::uint64_t matching_hash(const std::vector<Edge>& matching);
std::uint64_t matching_hash(const std::vector<ColoredEdge>& matching);

}  // namespace rainbow
