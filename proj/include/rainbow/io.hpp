#pragma once

#include <iosfwd>
#include <string>

#include "rainbow/hypergraph.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

// Hypergraph text format. First line "n k m", then m edge lines of k strictly
// increasing 0-based indices separated by single spaces. Lines starting with
// '#' are comments and are ignored. The final line must end with a newline.
// write/read round-trips are byte-identical.

Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);
void write_hypergraph_file(const std::string& path, const Hypergraph& h);

// Family text format. First line "n k m" with m = n/k the layer count; then
// for each layer a line "layer i e_i" followed by e_i edge lines.

RainbowFamily read_family(std::istream& in);
RainbowFamily read_family_file(const std::string& path);
void write_family(std::ostream& out, const RainbowFamily& family);
void write_family_file(const std::string& path, const RainbowFamily& family);

/// Debug JSON export: {"m":..., "n":..., "edges":[[color,[v...]],...]}.
std::string colored_graph_json(const ColoredGraph& t);

}  // namespace rainbow
