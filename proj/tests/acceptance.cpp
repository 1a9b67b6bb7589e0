// Acceptance suite: one pass/fail line per criterion, pinned tolerances,
// wall-clock limits enforced where the criterion carries one. Exits 0 only
// when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rainbow/absorbing.hpp"
#include "rainbow/closeness.hpp"
#include "rainbow/combinatorics.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/extremal_solver.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/transform.hpp"

using namespace rainbow;

namespace {

Hypergraph random_hypergraph(int n, int k, double density, Rng& rng) {
  std::vector<Edge> edges;
  for_each_k_subset(n, k, [&](const std::vector<int>& e) {
    if (rng.chance(density)) edges.push_back(e);
  });
  return Hypergraph(n, k, edges);
}

// ---- criterion 1: closed-form codegree threshold equals enumeration -------

bool threshold_agreement(std::string& detail) {
  int checked = 0;
  for (int k : {3, 4})
    for (int n = k; n <= 12; n += k) {
      HalfInt formula = delta_codegree_formula(n, k);
      ThresholdReport byenum = delta_threshold(n, k, k - 1);
      if (formula.twice != 2 * byenum.value) {
        detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k);
        return false;
      }
      ++checked;
    }
  bool anchors = delta_threshold(9, 3, 2).value == 2 && delta_threshold(12, 4, 3).value == 4 &&
                 delta_threshold(8, 4, 3).value == 1;
  if (!anchors) {
    detail = "anchored values moved";
    return false;
  }
  detail = std::to_string(checked) + " (n,k) pairs, anchors 2/4/1";
  return true;
}

// ---- criterion 2: every obstructed pattern is matchless -------------------

bool tightness(std::string& detail) {
  long long patterns = 0;
  for (int k : {3, 4})
    for (int n = k; n <= 12; n += k) {
      for (const VertexPartition& w : enumerate_ext(n, k)) {
        Hypergraph h = build_parity_hypergraph(w.n, w.k, w.a, w.i);
        if (find_perfect_matching(h).status != SolveStatus::none) {
          detail = "pattern with a matching at n=" + std::to_string(n) +
                   " k=" + std::to_string(k) + " |A|=" + std::to_string(w.a_size()) +
                   " i=" + std::to_string(w.i);
          return false;
        }
        ++patterns;
      }
      std::vector<Hypergraph> layers((std::size_t)(n / k), build_extremal_hypergraph(n, k));
      if (find_rainbow_pm(RainbowFamily(n, k, layers)).status != SolveStatus::none) {
        detail = "extremal family matched at n=" + std::to_string(n) + " k=" + std::to_string(k);
        return false;
      }
    }
  detail = std::to_string(patterns) + " patterns plus 7 extremal families, all matchless";
  return true;
}

// ---- criterion 3: direct rainbow search agrees with the reduction ---------

bool reduction_equivalence(std::string& detail) {
  Rng rng(20250814);
  int agreed = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 3 * (1 + rng.below_int(3));  // 3, 6, 9
    double density = 0.15 + 0.75 * rng.unit();
    std::vector<Hypergraph> layers;
    for (int i = 0; i < n / 3; ++i) layers.push_back(random_hypergraph(n, 3, density, rng));
    RainbowFamily family(n, 3, layers);
    SolveStatus direct = find_rainbow_pm(family).status;
    SolveStatus reduced = find_perfect_matching(build_rainbow_graph(family)).status;
    if (direct != reduced) {
      detail = "status split on trial " + std::to_string(trial);
      return false;
    }
    ++agreed;
  }
  detail = std::to_string(agreed) + "/500 statuses agree";
  return true;
}

// ---- criterion 4: normalized minimum degrees only grow downward -----------

bool degree_inheritance(std::string& detail) {
  Rng rng(77);
  long long instances = 0, checks = 0;
  while (instances < 1'000) {
    int k = 2 + rng.below_int(3);
    int n = k + 1 + rng.below_int(12 - k);
    Hypergraph h = random_hypergraph(n, k, 0.1 + 0.8 * rng.unit(), rng);
    ++instances;
    for (int l = 1; l <= k - 1; ++l)
      for (int lp = 1; lp <= l; ++lp) {
        // delta_l' * C(n-l, k-l) >= delta_l * C(n-l', k-l'), kept integral
        long long lhs = h.min_degree(lp) * binomial(n - l, k - l);
        long long rhs = h.min_degree(l) * binomial(n - lp, k - lp);
        if (lhs < rhs) {
          detail = "violated at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                   " l=" + std::to_string(l) + " l'=" + std::to_string(lp);
          return false;
        }
        ++checks;
      }
  }
  detail = std::to_string(instances) + " hypergraphs, " + std::to_string(checks) +
           " (l,l') checks, zero violations";
  return true;
}

// ---- criterion 5: matching-sampler concentration ---------------------------

bool fk_concentration(std::string& detail) {
  const int t = 100, samples = 10'000, universe = 600, set_size = 3;
  int cell = 0;
  for (double theta : {0.25, 0.5, 0.75}) {
    ++cell;
    Rng seeds(900 + cell);
    auto family = hashed_family(theta, seeds.derive(1).next_u64());
    SampleStats stats =
        fk_sample(universe, set_size, t, samples, family, theta, seeds.derive(2).next_u64());
    double band = 3.0 * std::sqrt(theta * (1 - theta) * t / samples) * std::sqrt((double)t);
    if (std::abs(stats.mean() - theta * t) > band) {
      detail = "mean " + std::to_string(stats.mean()) + " outside the theta=" +
               std::to_string(theta) + " guard band";
      return false;
    }
    for (int gamma = 1; gamma <= 3; ++gamma) {
      double bound = 2.0 * std::exp(-0.5 * gamma * gamma) + 0.01;
      if (stats.tail_fraction(gamma) > bound) {
        detail = "tail gamma=" + std::to_string(gamma) + " above bound at theta=" +
                 std::to_string(theta);
        return false;
      }
    }
  }
  detail = "3 densities, mean in band, 9 tail bounds hold";
  return true;
}

// ---- criterion 6: bipartite extremal number for bounded matchings ----------

namespace bip {

bool augment(int left, int n, unsigned mask, std::vector<int>& match, std::vector<char>& seen) {
  for (int right = 0; right < n; ++right) {
    if (!(mask >> (left * n + right) & 1u) || seen[(std::size_t)right]) continue;
    seen[(std::size_t)right] = 1;
    if (match[(std::size_t)right] < 0 || augment(match[(std::size_t)right], n, mask, match, seen)) {
      match[(std::size_t)right] = left;
      return true;
    }
  }
  return false;
}

int matching_number(int n, unsigned mask) {
  std::vector<int> match((std::size_t)n, -1);
  int size = 0;
  for (int left = 0; left < n; ++left) {
    std::vector<char> seen((std::size_t)n, 0);
    size += augment(left, n, mask, match, seen);
  }
  return size;
}

}  // namespace bip

bool bounded_matching_extremal(std::string& detail) {
  for (int n : {2, 3}) {
    for (int t = 1; t <= n - 1; ++t) {
      int best = -1;
      for (unsigned mask = 0; mask < (1u << (n * n)); ++mask)
        if (bip::matching_number(n, mask) <= t)
          best = std::max(best, __builtin_popcount(mask));
      if (best != t * n) {
        detail = "max edges " + std::to_string(best) + " at n=" + std::to_string(n) +
                 " t=" + std::to_string(t) + ", expected " + std::to_string(t * n);
        return false;
      }
    }
  }
  detail = "t*n confirmed for both part sizes and every t";
  return true;
}

// ---- criterion 7: census of vertices missing too many reference edges ------

bool goodness_census(std::string& detail) {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 3 + rng.below_int(2);
    int n = r + 2 + rng.below_int(11 - r);
    Hypergraph q_ref = random_hypergraph(n, r, 0.3 + 0.6 * rng.unit(), rng);
    double drop = 0.3 * rng.unit();
    std::vector<Edge> kept;
    long long removed = 0;
    for (const Edge& e : q_ref.edges()) {
      if (rng.chance(drop)) {
        ++removed;
        continue;
      }
      kept.push_back(e);
    }
    Hypergraph q(n, r, kept);
    double eps = (double)removed / std::pow((double)n, r);
    double eps_prime = std::sqrt(std::pow((double)r, r) * eps);
    GoodnessReport report = good_vertices(q, q_ref, eps_prime);
    if ((double)report.bad.size() > eps_prime * n) {
      detail = "census bound broken on trial " + std::to_string(trial);
      return false;
    }
  }
  detail = "200 random (Q, Q', eps) triples inside the bound";
  return true;
}

// ---- criterion 8: absorbing pipeline on dense instances --------------------

bool pipeline_efficacy(std::string& detail) {
  const int runs = 100, n = 30, k = 3;
  int found = 0;
  Rng rng(31337);
  Hypergraph complete = Hypergraph::complete(n, k);
  for (int run = 0; run < runs; ++run) {
    std::vector<Hypergraph> layers;
    for (int i = 0; i < n / k; ++i) {
      std::vector<Edge> edges;
      for (const Edge& e : complete.edges())
        if (!rng.chance(0.1)) edges.push_back(e);
      layers.emplace_back(n, k, edges);
    }
    RainbowFamily family(n, k, layers);
    PipelineParams params;
    params.seed = rng.next_u64();
    PipelineOutcome out = run_absorbing_pipeline(family, params);
    if (out.status != SolveStatus::found) continue;
    std::string why;
    if (!out.assignment || !verify_rainbow_pm(family, *out.assignment, &why)) {
      detail = "returned matching failed verification: " + why;
      return false;  // soundness is absolute, one bad witness fails the run
    }
    ++found;
  }
  if (found < 90) {
    detail = "only " + std::to_string(found) + "/100 found";
    return false;
  }
  detail = std::to_string(found) + "/100 found, every witness verified";
  return true;
}

// ---- criterion 9: constructive solver on perturbed patterns ----------------

bool extremal_solver_efficacy(std::string& detail) {
  Rng rng(555);
  int kept = 0, success = 0;
  long long attempts = 0;
  while (kept < 50 && attempts < 500) {
    ++attempts;
    InstanceSpec spec;
    spec.kind = InstanceKind::perturbed_extremal;
    spec.k = 3;
    spec.n = 3 * (3 + rng.below_int(3));  // 9, 12, 15
    spec.perturbation = 1 + rng.below_int(6);
    spec.seed = rng.next_u64();
    RainbowFamily family = generate_instance(spec);
    if (find_rainbow_pm(family).status != SolveStatus::found) continue;  // need a certificate
    ++kept;
    ExtremalOutcome out = solve_extremal(family, 0.05);
    if (out.status == SolveStatus::none) {
      detail = "false none on a certified-solvable instance, n=" + std::to_string(spec.n);
      return false;
    }
    if (out.status == SolveStatus::found) {
      std::string why;
      if (!out.assignment || !verify_rainbow_pm(family, *out.assignment, &why)) {
        detail = "unverified witness: " + why;
        return false;
      }
      ++success;
    } else if (out.phase.empty()) {
      detail = "failure without a phase tag";
      return false;
    }
  }
  if (kept < 50) {
    detail = "could not collect 50 solvable instances";
    return false;
  }
  if (success < 35) {
    detail = "only " + std::to_string(success) + "/50 solved end to end";
    return false;
  }
  detail = std::to_string(success) + "/50 solved, no false negatives";
  return true;
}

// ---- criterion 10: theorem sweep above the threshold ------------------------

bool theorem_sweep(std::string& detail) {
  const char* archive = "acceptance_counterexamples.jsonl";
  SweepReport nine = verify_theorem_sweep(9, 3, 2, 1'000, 1, archive);
  SweepReport six = verify_theorem_sweep(6, 3, 2, 1'000, 2, archive);
  if (nine.counterexamples > 0 || six.counterexamples > 0) {
    detail = std::to_string(nine.counterexamples + six.counterexamples) +
             " counterexamples archived to " + archive;
    return false;
  }
  if (nine.generation_failures > 0 || six.generation_failures > 0) {
    detail = "generation failures undercut the sweep";
    return false;
  }
  detail = "2000 above-threshold instances, all admit a rainbow matching";
  return true;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0 means the criterion carries no wall-clock limit
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "threshold formula agreement", 60, threshold_agreement},
      {2, "tightness of obstructed patterns", 120, tightness},
      {3, "reduction equivalence", 120, reduction_equivalence},
      {4, "degree inheritance", 0, degree_inheritance},
      {5, "sampler concentration", 60, fk_concentration},
      {6, "bounded-matching extremal number", 30, bounded_matching_extremal},
      {7, "goodness census", 0, goodness_census},
      {8, "pipeline soundness and efficacy", 600, pipeline_efficacy},
      {9, "constructive extremal solver", 600, extremal_solver_efficacy},
      {10, "theorem sweep", 0, theorem_sweep},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.limit_s > 0 && elapsed > c.limit_s) {
      ok = false;
      detail = "over the " + std::to_string((int)c.limit_s) + " s limit";
    }
    failures += !ok;
    std::printf("%s  %2d  %-36s  %7.2f s  %s\n", ok ? "PASS" : "FAIL", c.id, c.name, elapsed,
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d of 10 criteria failed\n", failures);
  else std::printf("all 10 criteria passed\n");
  return failures ? 1 : 0;
}
