#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

// Misuse of an operation's stated preconditions: wrong arity, divisibility,
// out-of-range vertices, overlapping sets that must be disjoint, and so on.
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured budget ran out in an operation that has no status channel.
// `partial` carries the best value seen before the budget expired.
struct resource_error : std::runtime_error {
  long long partial = 0;
  explicit resource_error(const std::string& what, long long partial_value = 0)
      : std::runtime_error(what), partial(partial_value) {}
};

struct parse_error : std::runtime_error {
  int line = 0;
  int column = 0;
  parse_error(const std::string& what, int line_no, int col = 0)
      : std::runtime_error(what + " (line " + std::to_string(line_no) +
                           (col > 0 ? ", column " + std::to_string(col) : std::string()) + ")"),
        line(line_no),
        column(col) {}
};

}  // namespace rainbow
