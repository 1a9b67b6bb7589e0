#pragma once

#include <vector>

#include "rainbow/extremal.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/transform.hpp"

namespace rainbow {

/// Edit distance from a colored graph to the extremal template over a
/// candidate partition family. epsilon = edits / (n + m)^(k+1), kept exact
/// as a fraction.
struct ClosenessReport {
  long long edits = 0;             // |pattern \ T| + |T \ pattern| for the witness
  long long denominator = 0;       // (n + m)^(k+1)
  VertexPartition witness;         // best (A, i) found
  bool exact = false;              // true when every candidate was tried
  double epsilon() const { return denominator ? (double)edits / (double)denominator : 0.0; }
};

/// Minimum symmetric difference between T and T(H^i(A,B),...) over
/// candidate (A, i): obstructed pairs whose imbalance |2|A|-n| is minimal.
/// Exact mode enumerates all such A (meant for n <= 14); sampled mode tries
/// `samples` random A plus a local vertex-swap descent from the best one.
ClosenessReport closeness_to_ext(const ColoredGraph& t, bool exact, int samples = 10'000,
                                 std::uint64_t seed = 1);

/// Vertices of Q failing deg_{Q' \ Q}(v) <= alpha * C(|V|-1, r-1).
struct GoodnessReport {
  double alpha = 0;
  std::vector<int> bad;
  long long reference_threshold = 0;  // C(|V|-1, r-1)
};

GoodnessReport good_vertices(const Hypergraph& q, const Hypergraph& q_ref, double alpha);

/// Residual parity test: i * |X'| and |A'| must have equal parity.
bool check_parity(long long a_size, long long x_size, int i);

}  // namespace rainbow
