#include "rainbow/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rainbow/errors.hpp"

namespace rainbow {
namespace {

// Content lines of the stream: comments dropped, trailing newline enforced.
// Each entry keeps its original 1-based line number for error messages.
struct Line {
  std::string text;
  int number;
};

std::vector<Line> content_lines(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.empty()) throw parse_error("empty input", 1);
  if (data.back() != '\n') {
    int lines = 1;
    for (char c : data)
      if (c == '\n') ++lines;
    throw parse_error("missing trailing newline", lines);
  }
  std::vector<Line> out;
  int number = 0;
  size_t pos = 0;
  while (pos < data.size()) {
    size_t end = data.find('\n', pos);
    std::string line = data.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (!line.empty() && line[0] == '#') continue;
    out.push_back({std::move(line), number});
  }
  return out;
}

// Strict integer fields separated by single spaces.
std::vector<long long> parse_fields(const Line& line, size_t expected) {
  std::vector<long long> out;
  const std::string& s = line.text;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t end = s.find(' ', pos);
    if (end == std::string::npos) end = s.size();
    std::string tok = s.substr(pos, end - pos);
    if (tok.empty()) throw parse_error("malformed field", line.number, (int)pos + 1);
    size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw parse_error("expected integer, got '" + tok + "'", line.number, (int)pos + 1);
    }
    if (used != tok.size())
      throw parse_error("expected integer, got '" + tok + "'", line.number, (int)pos + 1);
    out.push_back(value);
    if (end == s.size()) break;
    pos = end + 1;
  }
  if (expected != 0 && out.size() != expected)
    throw parse_error("expected " + std::to_string(expected) + " fields, got " +
                          std::to_string(out.size()),
                      line.number);
  return out;
}

Edge parse_edge(const Line& line, int k, int n) {
  std::vector<long long> f = parse_fields(line, (size_t)k);
  Edge e;
  for (long long v : f) {
    if (v < 0 || v >= n) throw parse_error("vertex " + std::to_string(v) + " out of range", line.number);
    if (!e.empty() && v <= e.back())
      throw parse_error("edge vertices must be strictly increasing", line.number);
    e.push_back((int)v);
  }
  return e;
}

template <class Fn>
auto with_contract_as_parse(int line_no, Fn fn) {
  try {
    return fn();
  } catch (const contract_error& err) {
    throw parse_error(err.what(), line_no);
  }
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
  std::vector<Line> lines = content_lines(in);
  if (lines.empty()) throw parse_error("missing header line", 1);
  std::vector<long long> header = parse_fields(lines[0], 3);
  long long n = header[0], k = header[1], m = header[2];
  if (n < 0 || k < 2 || m < 0) throw parse_error("invalid header values", lines[0].number);
  if ((long long)lines.size() - 1 != m)
    throw parse_error("expected " + std::to_string(m) + " edge lines, got " +
                          std::to_string(lines.size() - 1),
                      lines.back().number);
  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i)
    edges.push_back(parse_edge(lines[(size_t)i + 1], (int)k, (int)n));
  return with_contract_as_parse(lines[0].number,
                                [&] { return Hypergraph((int)n, (int)k, std::move(edges)); });
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.vertex_count() << ' ' << h.arity() << ' ' << h.edge_count() << '\n';
  for (const Edge& e : h.edges()) out << edge_to_string(e) << '\n';
}

RainbowFamily read_family(std::istream& in) {
  std::vector<Line> lines = content_lines(in);
  if (lines.empty()) throw parse_error("missing header line", 1);
  std::vector<long long> header = parse_fields(lines[0], 3);
  long long n = header[0], k = header[1], m = header[2];
  if (n < 0 || k < 2 || m < 0) throw parse_error("invalid header values", lines[0].number);
  size_t at = 1;
  std::vector<Hypergraph> layers;
  for (long long c = 0; c < m; ++c) {
    if (at >= lines.size()) throw parse_error("missing layer " + std::to_string(c), lines.back().number);
    const Line& head = lines[at];
    if (head.text.rfind("layer ", 0) != 0)
      throw parse_error("expected 'layer i e_i' line", head.number);
    Line rest{head.text.substr(6), head.number};
    std::vector<long long> f = parse_fields(rest, 2);
    if (f[0] != c)
      throw parse_error("expected layer " + std::to_string(c) + ", got " + std::to_string(f[0]),
                        head.number);
    long long edge_lines = f[1];
    if (edge_lines < 0 || at + (size_t)edge_lines >= lines.size())
      throw parse_error("layer " + std::to_string(c) + " claims more edges than remain", head.number);
    ++at;
    std::vector<Edge> edges;
    for (long long i = 0; i < edge_lines; ++i, ++at)
      edges.push_back(parse_edge(lines[at], (int)k, (int)n));
    layers.push_back(with_contract_as_parse(
        head.number, [&] { return Hypergraph((int)n, (int)k, std::move(edges)); }));
  }
  if (at != lines.size()) throw parse_error("trailing content after last layer", lines[at].number);
  return with_contract_as_parse(lines[0].number, [&] {
    return RainbowFamily((int)n, (int)k, std::move(layers));
  });
}

void write_family(std::ostream& out, const RainbowFamily& family) {
  out << family.n << ' ' << family.k << ' ' << family.layer_count() << '\n';
  for (int c = 0; c < family.layer_count(); ++c) {
    const Hypergraph& h = family.layers[(size_t)c];
    out << "layer " << c << ' ' << h.edge_count() << '\n';
    for (const Edge& e : h.edges()) out << edge_to_string(e) << '\n';
  }
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'", 0);
  return read_hypergraph(in);
}

void write_hypergraph_file(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open '" + path + "' for writing", 0);
  write_hypergraph(out, h);
}

RainbowFamily read_family_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'", 0);
  return read_family(in);
}

void write_family_file(const std::string& path, const RainbowFamily& family) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("cannot open '" + path + "' for writing", 0);
  write_family(out, family);
}

std::string colored_graph_json(const ColoredGraph& t) {
  nlohmann::json j;
  j["m"] = t.color_count();
  j["n"] = t.base_count();
  j["edges"] = nlohmann::json::array();
  for (const ColoredEdge& e : t.edges()) j["edges"].push_back({e.color, e.base});
  return j.dump();
}

}  // namespace rainbow
