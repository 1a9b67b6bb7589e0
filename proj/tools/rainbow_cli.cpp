#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rainbow/absorbing.hpp"
#include "rainbow/closeness.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/extremal_solver.hpp"
#include "rainbow/harness.hpp"
#include "rainbow/io.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solver.hpp"
#include "rainbow/transform.hpp"

using nlohmann::ordered_json;
using namespace rainbow;

namespace {

int code_of(SolveStatus status) {
  switch (status) {
    case SolveStatus::found: return 0;
    case SolveStatus::none: return 1;
    case SolveStatus::timeout: return 2;
  }
  return 3;
}

Budget make_budget(std::uint64_t nodes) { return nodes ? Budget(nodes) : Budget(); }

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

void write_text(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw contract_error("cannot open " + path);
  body(out);
}

void print_edges(const std::vector<Edge>& edges) {
  for (const Edge& e : edges) {
    for (std::size_t i = 0; i < e.size(); ++i) std::cout << (i ? " " : "") << e[i];
    std::cout << "\n";
  }
}

// "c:v1,v2,v3" -> global vertex set {v1, v2, v3, n+c}
std::vector<int> parse_balanced_set(const std::string& text, const ColoredGraph& t) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw contract_error("expected COLOR:V1,V2,... in --set");
  std::vector<int> out;
  int color = std::stoi(text.substr(0, colon));
  std::stringstream rest(text.substr(colon + 1));
  std::string part;
  while (std::getline(rest, part, ',')) out.push_back(std::stoi(part));
  out.push_back(t.color_vertex(color));
  std::sort(out.begin(), out.end());
  return out;
}

ordered_json witness_json(const VertexPartition& w) {
  ordered_json j;
  j["witness_size_a"] = (int)w.a.size();
  j["witness_parity"] = w.i;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow perfect matching workbench"};
  app.require_subcommand(1);
  int rc = 0;

  // extremal ------------------------------------------------------------
  CLI::App* extremal = app.add_subcommand("extremal", "parity patterns and degree thresholds");
  extremal->require_subcommand(1);

  struct {
    int n = 0, k = 0, size_a = 0, parity = 0;
    std::string out;
  } ext_build;
  CLI::App* build = extremal->add_subcommand("build", "write one parity pattern hypergraph");
  build->add_option("--n", ext_build.n, "vertex count")->required();
  build->add_option("--k", ext_build.k, "edge size")->required();
  build->add_option("--size-a", ext_build.size_a, "size of the distinguished side")->required();
  build->add_option("--parity", ext_build.parity, "intersection parity, 0 or 1")->required();
  build->add_option("--out", ext_build.out, "output file (default stdout)");
  build->callback([&] {
    std::vector<int> a((std::size_t)ext_build.size_a);
    for (int v = 0; v < ext_build.size_a; ++v) a[(std::size_t)v] = v;
    Hypergraph h = build_parity_hypergraph(ext_build.n, ext_build.k, a, ext_build.parity);
    write_text(ext_build.out, [&](std::ostream& out) { write_hypergraph(out, h); });
  });

  struct {
    int n = 0, k = 0, l = 0;
    bool formula_only = false;
  } ext_delta;
  CLI::App* delta = extremal->add_subcommand("delta", "degree threshold for the given level");
  delta->add_option("--n", ext_delta.n, "vertex count")->required();
  delta->add_option("--k", ext_delta.k, "edge size")->required();
  delta->add_option("--l", ext_delta.l, "degree level")->required();
  delta->add_flag("--formula-only", ext_delta.formula_only, "use the closed form, l = k-1 only");
  delta->callback([&] {
    ordered_json j;
    j["n"] = ext_delta.n;
    j["k"] = ext_delta.k;
    j["l"] = ext_delta.l;
    if (ext_delta.formula_only) {
      if (ext_delta.l != ext_delta.k - 1)
        throw contract_error("the closed form covers l = k-1 only");
      HalfInt value = delta_codegree_formula(ext_delta.n, ext_delta.k);
      if (value.is_integer())
        j["value"] = value.twice / 2;
      else
        j["value"] = value.to_double();
      VertexPartition w = canonical_extremal_pattern(ext_delta.n, ext_delta.k);
      j.update(witness_json(w));
      j["method"] = "formula";
    } else {
      ThresholdReport report = delta_threshold(ext_delta.n, ext_delta.k, ext_delta.l);
      j["value"] = report.value;
      j.update(witness_json(report.witness));
      j["method"] = report.method;
    }
    emit(j);
  });

  // solve ----------------------------------------------------------------
  CLI::App* solve = app.add_subcommand("solve", "exact matching solvers");
  solve->require_subcommand(1);

  struct {
    std::string in;
    std::uint64_t budget = 0;
    bool count = false;
  } solve_pm;
  CLI::App* pm = solve->add_subcommand("pm", "perfect matching of one hypergraph");
  pm->add_option("--in", solve_pm.in, "hypergraph file")->required();
  pm->add_option("--budget", solve_pm.budget, "search node budget");
  pm->add_flag("--count", solve_pm.count, "count all perfect matchings instead");
  pm->callback([&] {
    Hypergraph h = read_hypergraph_file(solve_pm.in);
    if (solve_pm.count) {
      CountOutcome out = count_perfect_matchings(h, make_budget(solve_pm.budget));
      std::cout << out.count << "\n";
      rc = out.count > 0 ? 0 : 1;
      return;
    }
    SolveOutcome out = find_perfect_matching(h, make_budget(solve_pm.budget));
    if (out.matching) print_edges(*out.matching);
    rc = code_of(out.status);
  });

  struct {
    std::string family;
    std::uint64_t budget = 0;
  } solve_rainbow;
  CLI::App* rainbow_cmd = solve->add_subcommand("rainbow", "rainbow perfect matching of a family");
  rainbow_cmd->add_option("--family", solve_rainbow.family, "family file")->required();
  rainbow_cmd->add_option("--budget", solve_rainbow.budget, "search node budget");
  rainbow_cmd->callback([&] {
    RainbowFamily family = read_family_file(solve_rainbow.family);
    RainbowOutcome out = find_rainbow_pm(family, make_budget(solve_rainbow.budget));
    if (out.assignment) print_edges(*out.assignment);  // line i comes from layer i
    rc = code_of(out.status);
  });

  struct {
    std::string family;
    double epsilon = 0;
    int fallback_n = 12;
    int samples = 10'000;
    std::uint64_t budget = 0, seed = 1;
  } solve_ext;
  CLI::App* sx = solve->add_subcommand("extremal", "constructive solver for near-pattern inputs");
  sx->add_option("--family", solve_ext.family, "family file")->required();
  sx->add_option("--epsilon", solve_ext.epsilon, "closeness bound to accept the instance")
      ->required();
  sx->add_option("--fallback-n", solve_ext.fallback_n, "exact-solver rescue up to this n");
  sx->add_option("--samples", solve_ext.samples, "closeness samples when too big for exact");
  sx->add_option("--budget", solve_ext.budget, "subproblem node budget");
  sx->add_option("--seed", solve_ext.seed, "sampling seed");
  sx->callback([&] {
    RainbowFamily family = read_family_file(solve_ext.family);
    ExtremalParams params;
    params.fallback_n = solve_ext.fallback_n;
    params.closeness_samples = solve_ext.samples;
    params.seed = solve_ext.seed;
    if (solve_ext.budget) params.solve_budget = Budget(solve_ext.budget);
    ExtremalOutcome out = solve_extremal(family, solve_ext.epsilon, params);
    ordered_json j;
    j["status"] = to_string(out.status);
    j["phase"] = out.phase;
    j["detail"] = out.detail;
    j["used_fallback"] = out.used_fallback;
    j["epsilon"] = out.closeness.epsilon();
    j["edits"] = out.closeness.edits;
    j.update(witness_json(out.closeness.witness));
    if (out.assignment) j["assignment"] = *out.assignment;
    emit(j);
    rc = code_of(out.status);
  });

  // absorb ---------------------------------------------------------------
  CLI::App* absorb_cmd = app.add_subcommand("absorb", "absorbing-method machinery");
  absorb_cmd->require_subcommand(1);

  struct {
    std::string family;
    double gamma = 0.2, xi = 0.05;
    std::uint64_t seed = 1;
    int fallback_n = 12, probes = 200, restarts = 5;
  } pipe;
  CLI::App* pipeline = absorb_cmd->add_subcommand("pipeline", "reserve, cover, absorb");
  pipeline->add_option("--family", pipe.family, "family file")->required();
  pipeline->add_option("--gamma", pipe.gamma, "reserve density");
  pipeline->add_option("--xi", pipe.xi, "almost-cover slack");
  pipeline->add_option("--seed", pipe.seed, "random seed");
  pipeline->add_option("--fallback-n", pipe.fallback_n, "exact-solver rescue up to this n");
  pipeline->add_option("--probes", pipe.probes, "absorption probes per reserve candidate");
  pipeline->add_option("--restarts", pipe.restarts, "pipeline restarts before giving up");
  pipeline->callback([&] {
    RainbowFamily family = read_family_file(pipe.family);
    PipelineParams params;
    params.gamma = pipe.gamma;
    params.xi = pipe.xi;
    params.seed = pipe.seed;
    params.fallback_n = pipe.fallback_n;
    params.probes = pipe.probes;
    params.restarts = pipe.restarts;
    PipelineOutcome out = run_absorbing_pipeline(family, params);
    ordered_json j;
    j["status"] = to_string(out.status);
    j["phase"] = out.phase;
    j["detail"] = out.detail;
    j["attempts"] = out.attempts;
    j["used_fallback"] = out.used_fallback;
    if (out.assignment) j["assignment"] = *out.assignment;
    emit(j);
    rc = code_of(out.status);
  });

  struct {
    std::string family, set;
    int order = 1;
    std::uint64_t budget = 10'000'000, seed = 1;
    bool sampled = false;
  } census;
  CLI::App* count_cmd = absorb_cmd->add_subcommand("count", "absorbers of one balanced set");
  count_cmd->add_option("--family", census.family, "family file")->required();
  count_cmd->add_option("--set", census.set, "balanced set as COLOR:V1,V2,...")->required();
  count_cmd->add_option("--order", census.order, "1 or 2 edges per absorber");
  count_cmd->add_option("--budget", census.budget, "candidate cap (exact) or draws (sampled)");
  count_cmd->add_flag("--sampled", census.sampled, "estimate instead of enumerating");
  count_cmd->add_option("--seed", census.seed, "sampling seed");
  count_cmd->callback([&] {
    RainbowFamily family = read_family_file(census.family);
    ColoredGraph t = build_rainbow_graph(family);
    std::vector<int> e = parse_balanced_set(census.set, t);
    AbsorberCensus out =
        count_absorbers(e, t, census.order, !census.sampled, census.budget, census.seed);
    ordered_json j;
    j["order"] = out.order;
    j["exact"] = out.exact;
    j["count"] = out.count;
    j["estimate"] = out.estimate;
    j["std_error"] = out.std_error;
    emit(j);
  });

  struct {
    double theta = 0.5;
    int t = 50, samples = 1000, set_size = 2, universe = 0;
    std::uint64_t seed = 1;
  } fk;
  CLI::App* fk_cmd = absorb_cmd->add_subcommand("fk-test", "matching-sampler concentration stats");
  fk_cmd->add_option("--theta", fk.theta, "family density")->required();
  fk_cmd->add_option("--t", fk.t, "matching size")->required();
  fk_cmd->add_option("--samples", fk.samples, "number of matchings")->required();
  fk_cmd->add_option("--seed", fk.seed, "random seed");
  fk_cmd->add_option("--set-size", fk.set_size, "vertices per matching set");
  fk_cmd->add_option("--n", fk.universe, "universe size (default 2*t*set-size)");
  fk_cmd->callback([&] {
    int universe = fk.universe ? fk.universe : 2 * fk.t * fk.set_size;
    Rng seeds(fk.seed);
    auto family = hashed_family(fk.theta, seeds.derive(1).next_u64());
    SampleStats stats = fk_sample(universe, fk.set_size, fk.t, fk.samples, family, fk.theta,
                                  seeds.derive(2).next_u64());
    ordered_json j;
    j["theta"] = fk.theta;
    j["t"] = fk.t;
    j["samples"] = fk.samples;
    j["mean"] = stats.mean();
    j["expected"] = fk.theta * fk.t;
    for (int gamma = 1; gamma <= 3; ++gamma) {
      j["tail_" + std::to_string(gamma)] = stats.tail_fraction(gamma);
      j["bound_" + std::to_string(gamma)] = 2 * std::exp(-0.5 * gamma * gamma);
    }
    emit(j);
  });

  // closeness / goodness ---------------------------------------------------
  struct {
    std::string family;
    bool exact = false;
    int samples = 10'000;
    std::uint64_t seed = 1;
  } close;
  CLI::App* closeness_cmd = app.add_subcommand("closeness", "edit distance to the worst pattern");
  closeness_cmd->add_option("--family", close.family, "family file")->required();
  closeness_cmd->add_flag("--exact", close.exact, "enumerate every candidate side");
  closeness_cmd->add_option("--samples", close.samples, "sampled-mode draws");
  closeness_cmd->add_option("--seed", close.seed, "sampled-mode seed");
  closeness_cmd->callback([&] {
    ColoredGraph t = build_rainbow_graph(read_family_file(close.family));
    ClosenessReport report = closeness_to_ext(t, close.exact, close.samples, close.seed);
    ordered_json j;
    j["epsilon"] = report.epsilon();
    j["edits"] = report.edits;
    j["denominator"] = report.denominator;
    j.update(witness_json(report.witness));
    j["exact"] = report.exact;
    emit(j);
  });

  struct {
    std::string in, ref;
    double alpha = 0;
  } good;
  CLI::App* goodness_cmd = app.add_subcommand("goodness", "vertices missing too many ref edges");
  goodness_cmd->add_option("--in", good.in, "hypergraph file")->required();
  goodness_cmd->add_option("--ref", good.ref, "reference hypergraph file")->required();
  goodness_cmd->add_option("--alpha", good.alpha, "missing-degree fraction")->required();
  goodness_cmd->callback([&] {
    Hypergraph q = read_hypergraph_file(good.in);
    Hypergraph ref = read_hypergraph_file(good.ref);
    GoodnessReport report = good_vertices(q, ref, good.alpha);
    ordered_json j;
    j["alpha"] = report.alpha;
    j["threshold"] = report.reference_threshold;
    j["bad_count"] = (int)report.bad.size();
    j["bad"] = report.bad;
    emit(j);
  });

  // harness ----------------------------------------------------------------
  CLI::App* harness = app.add_subcommand("harness", "instance generation and experiments");
  harness->require_subcommand(1);

  struct {
    int n = 0, k = 0, l = 0, trials = 0;
    std::uint64_t seed = 1;
    std::string out;
  } sweep;
  CLI::App* sweep_cmd = harness->add_subcommand("sweep", "random above-threshold theorem sweep");
  sweep_cmd->add_option("--n", sweep.n, "vertex count")->required();
  sweep_cmd->add_option("--k", sweep.k, "edge size")->required();
  sweep_cmd->add_option("--l", sweep.l, "degree level")->required();
  sweep_cmd->add_option("--trials", sweep.trials, "instances to draw")->required();
  sweep_cmd->add_option("--seed", sweep.seed, "sweep seed");
  sweep_cmd->add_option("--out", sweep.out, "counterexample archive (JSONL)");
  sweep_cmd->callback([&] {
    SweepReport report = verify_theorem_sweep(sweep.n, sweep.k, sweep.l, sweep.trials, sweep.seed,
                                              sweep.out);
    ordered_json j;
    j["n"] = report.n;
    j["k"] = report.k;
    j["l"] = report.l;
    j["trials"] = report.trials;
    j["threshold"] = report.threshold;
    j["counterexamples"] = report.counterexamples;
    j["timeouts"] = report.timeouts;
    j["generation_failures"] = report.generation_failures;
    j["archived_seeds"] = report.archived_seeds;
    emit(j);
    rc = report.counterexamples == 0 ? 0 : 1;
  });

  struct {
    std::string kind, out;
    int n = 0, k = 0, l = 0, perturbation = 0;
    double density = 0.55;
    std::uint64_t seed = 1;
  } gen;
  CLI::App* gen_cmd = harness->add_subcommand("gen", "write one generated instance");
  gen_cmd->add_option("--kind", gen.kind, "instance kind")->required();
  gen_cmd->add_option("--n", gen.n, "vertex count")->required();
  gen_cmd->add_option("--k", gen.k, "edge size")->required();
  gen_cmd->add_option("--seed", gen.seed, "instance seed");
  gen_cmd->add_option("--l", gen.l, "degree level (default k-1)");
  gen_cmd->add_option("--perturbation", gen.perturbation, "perturbed-kind edit count");
  gen_cmd->add_option("--density", gen.density, "random-kind starting density");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");
  gen_cmd->callback([&] {
    InstanceSpec spec;
    spec.kind = instance_kind_of(gen.kind);
    spec.n = gen.n;
    spec.k = gen.k;
    spec.l = gen.l ? gen.l : gen.k - 1;
    spec.perturbation = gen.perturbation;
    spec.density = gen.density;
    spec.seed = gen.seed;
    RainbowFamily family = generate_instance(spec);
    write_text(gen.out, [&](std::ostream& out) { write_family(out, family); });
  });

  struct {
    std::string config, out;
  } run;
  CLI::App* run_cmd = harness->add_subcommand("run", "run a key=value experiment config");
  run_cmd->add_option("--config", run.config, "config file")->required();
  run_cmd->add_option("--out", run.out, "JSONL record file")->required();
  run_cmd->callback([&] {
    ExperimentConfig config = parse_experiment_config_file(run.config);
    ExperimentOutcome outcome = run_experiment(config, run.out);
    ordered_json j;
    j["written"] = (int)outcome.written.size();
    j["resumed"] = outcome.resumed;
    j["out"] = run.out;
    emit(j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const parse_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const resource_error& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
