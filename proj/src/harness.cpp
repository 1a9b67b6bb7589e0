#include "rainbow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>
#include <thread>

#include "json.hpp"
#include "rainbow/absorbing.hpp"
#include "rainbow/combinatorics.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/rng.hpp"
#include "rainbow/solver.hpp"

namespace rainbow {

const char* harness_version() { return "0.1.0"; }

const char* to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::complete: return "complete";
    case InstanceKind::extremal: return "extremal";
    case InstanceKind::perturbed_extremal: return "perturbed-extremal";
    case InstanceKind::random_above_threshold: return "random-above-threshold";
    case InstanceKind::adversarial_near_extremal: return "adversarial-near-extremal";
  }
  return "?";
}

InstanceKind instance_kind_of(const std::string& name) {
  for (InstanceKind kind :
       {InstanceKind::complete, InstanceKind::extremal, InstanceKind::perturbed_extremal,
        InstanceKind::random_above_threshold, InstanceKind::adversarial_near_extremal})
    if (name == to_string(kind)) return kind;
  throw contract_error("unknown instance kind: " + name);
}

namespace {

void validate(const InstanceSpec& spec) {
  if (spec.k < 2 || spec.n < spec.k || spec.n % spec.k != 0)
    throw contract_error("instance needs k >= 2 and n a positive multiple of k");
  if (spec.kind == InstanceKind::random_above_threshold &&
      (spec.l < 1 || spec.l > spec.k - 1))
    throw contract_error("degree level l must be in [1, k-1]");
  if (spec.perturbation < 0) throw contract_error("perturbation must be >= 0");
  if (spec.density <= 0 || spec.density > 1) throw contract_error("density must be in (0, 1]");
}

RainbowFamily uniform_family(int n, int k, const Hypergraph& layer) {
  std::vector<Hypergraph> layers((std::size_t)(n / k), layer);
  return RainbowFamily(n, k, layers);
}

// adds lexicographically smallest missing edges through s until its degree
// clears the bound
void top_up(std::set<Edge>& edges, int n, int k, const std::vector<int>& s, long long bound) {
  long long deg = 0;
  for (const Edge& e : edges) {
    bool covers = true;
    for (int v : s) covers = covers && std::binary_search(e.begin(), e.end(), v);
    deg += covers;
  }
  if (deg > bound) return;
  std::vector<int> rest;
  for (int v = 0; v < n; ++v)
    if (!std::binary_search(s.begin(), s.end(), v)) rest.push_back(v);
  for_each_k_subset((int)rest.size(), k - (int)s.size(), [&](const std::vector<int>& pick) {
    if (deg > bound) return;
    Edge e = s;
    for (int j : pick) e.push_back(rest[(std::size_t)j]);
    std::sort(e.begin(), e.end());
    if (edges.insert(e).second) ++deg;
  });
}

Hypergraph above_threshold_layer(const InstanceSpec& spec, long long bound, Rng& rng,
                                 int& draws, int rejection_cap) {
  while (true) {
    if (++draws > rejection_cap)
      throw resource_error("layer generation hit the rejection cap", draws - 1);
    std::set<Edge> edges;
    for_each_k_subset(spec.n, spec.k, [&](const std::vector<int>& e) {
      if (rng.chance(spec.density)) edges.insert(e);
    });
    for_each_k_subset(spec.n, spec.l,
                      [&](const std::vector<int>& s) { top_up(edges, spec.n, spec.k, s, bound); });
    Hypergraph h(spec.n, spec.k, std::vector<Edge>(edges.begin(), edges.end()));
    if (h.min_degree(spec.l) > bound) return h;
  }
}

}  // namespace

RainbowFamily generate_instance(const InstanceSpec& spec, int rejection_cap) {
  validate(spec);
  Rng rng(spec.seed);
  int layers = spec.n / spec.k;

  switch (spec.kind) {
    case InstanceKind::complete:
      return uniform_family(spec.n, spec.k, Hypergraph::complete(spec.n, spec.k));

    case InstanceKind::extremal:
      return uniform_family(spec.n, spec.k, build_extremal_hypergraph(spec.n, spec.k));

    case InstanceKind::perturbed_extremal: {
      Hypergraph pattern = build_extremal_hypergraph(spec.n, spec.k);
      std::vector<std::set<Edge>> added((std::size_t)layers);
      int placed = 0, draws = 0;
      while (placed < spec.perturbation) {
        if (++draws > rejection_cap)
          throw resource_error("perturbation hit the rejection cap", placed);
        int layer = rng.below_int(layers);
        Edge e = rng.sample_distinct(spec.n, spec.k);
        if (pattern.contains(e)) continue;
        if (added[(std::size_t)layer].insert(e).second) ++placed;
      }
      std::vector<Hypergraph> out;
      for (const std::set<Edge>& extra : added) {
        std::vector<Edge> edges = pattern.edges();
        edges.insert(edges.end(), extra.begin(), extra.end());
        out.emplace_back(spec.n, spec.k, edges);
      }
      return RainbowFamily(spec.n, spec.k, out);
    }

    case InstanceKind::random_above_threshold: {
      long long bound = delta_threshold(spec.n, spec.k, spec.l).value;
      std::vector<Hypergraph> out;
      int draws = 0;
      for (int i = 0; i < layers; ++i)
        out.push_back(above_threshold_layer(spec, bound, rng, draws, rejection_cap));
      return RainbowFamily(spec.n, spec.k, out);
    }

    case InstanceKind::adversarial_near_extremal: {
      Hypergraph pattern = build_extremal_hypergraph(spec.n, spec.k);
      std::vector<std::set<Edge>> layer_edges(
          (std::size_t)layers, std::set<Edge>(pattern.edges().begin(), pattern.edges().end()));
      int additions = (spec.perturbation + 1) / 2;
      int deletions = spec.perturbation / 2;
      int placed = 0, draws = 0;
      while (placed < additions) {
        if (++draws > rejection_cap)
          throw resource_error("perturbation hit the rejection cap", placed);
        // all additions run through one vertex, so at most one is usable
        Edge e = rng.sample_distinct(spec.n - 1, spec.k - 1);
        for (int& v : e) ++v;
        e.insert(e.begin(), 0);
        if (pattern.contains(e)) continue;
        int layer = rng.below_int(layers);
        std::set<Edge>& target = layer_edges[(std::size_t)layer];
        if (!target.count(e)) {
          target.insert(e);
          ++placed;
        }
      }
      placed = 0;
      while (placed < deletions) {
        if (++draws > rejection_cap)
          throw resource_error("perturbation hit the rejection cap", placed);
        int layer = rng.below_int(layers);
        const std::vector<Edge>& pool = pattern.edges();
        const Edge& e = pool[(std::size_t)rng.below_int((int)pool.size())];
        if (layer_edges[(std::size_t)layer].erase(e)) ++placed;
      }
      std::vector<Hypergraph> out;
      for (const std::set<Edge>& edges : layer_edges)
        out.emplace_back(spec.n, spec.k, std::vector<Edge>(edges.begin(), edges.end()));
      return RainbowFamily(spec.n, spec.k, out);
    }
  }
  throw contract_error("unknown instance kind");
}

namespace {

nlohmann::ordered_json family_json(const RainbowFamily& family) {
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (const Hypergraph& h : family.layers) layers.push_back(h.edges());
  return layers;
}

}  // namespace

SweepReport verify_theorem_sweep(int n, int k, int l, int trials, std::uint64_t seed,
                                 const std::string& archive_path) {
  SweepReport report;
  report.n = n;
  report.k = k;
  report.l = l;
  report.trials = trials;
  report.threshold = delta_threshold(n, k, l).value;

  InstanceSpec spec;
  spec.kind = InstanceKind::random_above_threshold;
  spec.n = n;
  spec.k = k;
  spec.l = l;
  Rng seeds(seed);
  for (int trial = 0; trial < trials; ++trial) {
    spec.seed = seeds.derive((std::uint64_t)trial).next_u64();
    RainbowFamily family;
    try {
      family = generate_instance(spec);
    } catch (const resource_error&) {
      ++report.generation_failures;
      continue;
    }
    RainbowOutcome out = find_rainbow_pm(family);
    if (out.status == SolveStatus::timeout) ++report.timeouts;
    if (out.status != SolveStatus::none) continue;
    ++report.counterexamples;
    report.archived_seeds.push_back(spec.seed);
    if (!archive_path.empty()) {
      nlohmann::ordered_json j;
      j["n"] = n;
      j["k"] = k;
      j["l"] = l;
      j["seed"] = spec.seed;
      j["threshold"] = report.threshold;
      j["layers"] = family_json(family);
      std::ofstream out_file(archive_path, std::ios::app);
      out_file << j.dump() << "\n";
    }
  }
  return report;
}

namespace {

struct ConfigText {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;
};

ConfigText read_pairs(std::istream& in) {
  ConfigText text;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) view.remove_prefix(1);
    while (!view.empty() && (view.back() == ' ' || view.back() == '\r' || view.back() == '\t'))
      view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    std::size_t eq = view.find('=');
    if (eq == std::string_view::npos)
      throw parse_error("expected key=value", line_no, (int)view.size());
    std::string key(view.substr(0, eq));
    std::string value(view.substr(eq + 1));
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (key.empty()) throw parse_error("empty key", line_no, 1);
    if (!text.values.emplace(key, value).second)
      throw parse_error("duplicate key " + key, line_no, 1);
    text.lines[key] = line_no;
  }
  return text;
}

template <class T, class Parse>
T parse_value(const ConfigText& text, const std::string& key, T fallback, Parse parse) {
  auto it = text.values.find(key);
  if (it == text.values.end()) return fallback;
  try {
    std::size_t used = 0;
    T value = parse(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("trailing junk");
    return value;
  } catch (const std::exception&) {
    throw parse_error("bad value for " + key + ": " + it->second, text.lines.at(key), 1);
  }
}

int config_int(const ConfigText& t, const std::string& key, int fallback) {
  return parse_value<int>(t, key, fallback,
                          [](const std::string& s, std::size_t* used) { return std::stoi(s, used); });
}

double config_double(const ConfigText& t, const std::string& key, double fallback) {
  return parse_value<double>(t, key, fallback, [](const std::string& s, std::size_t* used) {
    return std::stod(s, used);
  });
}

std::uint64_t config_u64(const ConfigText& t, const std::string& key, std::uint64_t fallback) {
  return parse_value<std::uint64_t>(t, key, fallback, [](const std::string& s, std::size_t* used) {
    return std::stoull(s, used);
  });
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  ConfigText text = read_pairs(in);
  static const std::set<std::string> known = {"kind",    "n",       "k",      "l",
                                              "perturbation", "density", "seed",   "count",
                                              "modules", "budget",  "workers"};
  for (const auto& [key, value] : text.values)
    if (!known.count(key)) throw parse_error("unknown key " + key, text.lines.at(key), 1);
  for (const char* required : {"kind", "n", "k"})
    if (!text.values.count(required))
      throw parse_error(std::string("missing required key ") + required, 0, 0);

  ExperimentConfig config;
  try {
    config.base.kind = instance_kind_of(text.values.at("kind"));
  } catch (const contract_error& e) {
    throw parse_error(e.what(), text.lines.at("kind"), 1);
  }
  config.base.n = config_int(text, "n", 0);
  config.base.k = config_int(text, "k", 2);
  config.base.l = config_int(text, "l", config.base.k - 1);
  config.base.perturbation = config_int(text, "perturbation", 0);
  config.base.density = config_double(text, "density", 0.55);
  config.base.seed = config_u64(text, "seed", 1);
  config.count = config_int(text, "count", 1);
  config.budget = config_u64(text, "budget", 0);
  config.workers = config_int(text, "workers", 1);
  if (config.count < 0) throw parse_error("count must be >= 0", text.lines.at("count"), 1);
  if (config.workers < 1) throw parse_error("workers must be >= 1", text.lines.at("workers"), 1);

  auto it = text.values.find("modules");
  if (it != text.values.end()) {
    config.modules.clear();
    std::stringstream parts(it->second);
    std::string part;
    while (std::getline(parts, part, ',')) {
      while (!part.empty() && part.front() == ' ') part.erase(part.begin());
      while (!part.empty() && part.back() == ' ') part.pop_back();
      if (part != "solver" && part != "pipeline")
        throw parse_error("unknown module " + part, text.lines.at("modules"), 1);
      if (std::find(config.modules.begin(), config.modules.end(), part) == config.modules.end())
        config.modules.push_back(part);
    }
    if (config.modules.empty())
      throw parse_error("modules must name at least one module", text.lines.at("modules"), 1);
  }

  std::string normalized;
  normalized += "kind=" + std::string(to_string(config.base.kind)) + "\n";
  normalized += "n=" + std::to_string(config.base.n) + "\n";
  normalized += "k=" + std::to_string(config.base.k) + "\n";
  normalized += "l=" + std::to_string(config.base.l) + "\n";
  normalized += "perturbation=" + std::to_string(config.base.perturbation) + "\n";
  normalized += "density=" + std::to_string(config.base.density) + "\n";
  normalized += "seed=" + std::to_string(config.base.seed) + "\n";
  normalized += "count=" + std::to_string(config.count) + "\n";
  normalized += "budget=" + std::to_string(config.budget) + "\n";
  normalized += "modules=";
  for (const std::string& module : config.modules) normalized += module + ",";
  normalized += "\n";
  config.config_hash = fnv1a64(normalized);

  try {
    validate(config.base);
  } catch (const contract_error& e) {
    throw parse_error(e.what(), 0, 0);
  }
  return config;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config " + path, 0, 0);
  return parse_experiment_config(in);
}

std::string record_json_line(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["index"] = r.index;
  j["module"] = r.module;
  j["kind"] = to_string(r.spec.kind);
  j["n"] = r.spec.n;
  j["k"] = r.spec.k;
  j["l"] = r.spec.l;
  j["perturbation"] = r.spec.perturbation;
  j["density"] = r.spec.density;
  j["seed"] = r.spec.seed;
  j["status"] = r.status;
  j["witness"] = r.witness_hash;
  j["nodes"] = r.nodes;
  j["elapsed_ms"] = r.elapsed_ms;
  j["config"] = r.config_hash;
  j["version"] = r.version;
  return j.dump();
}

namespace {

ExperimentRecord run_task(const ExperimentConfig& config, int index, const std::string& module) {
  ExperimentRecord record;
  record.index = index;
  record.module = module;
  record.spec = config.base;
  record.spec.seed = Rng(config.base.seed).derive((std::uint64_t)index).next_u64();
  record.config_hash = config.config_hash;
  record.version = harness_version();

  auto start = std::chrono::steady_clock::now();
  try {
    RainbowFamily family = generate_instance(record.spec);
    if (module == "solver") {
      RainbowOutcome out =
          find_rainbow_pm(family, config.budget ? Budget(config.budget) : Budget());
      record.status = to_string(out.status);
      record.nodes = out.nodes;
      if (out.assignment) record.witness_hash = matching_hash(*out.assignment);
    } else {
      PipelineParams params;
      params.seed = record.spec.seed;
      PipelineOutcome out = run_absorbing_pipeline(family, params);
      record.status = to_string(out.status);
      if (!out.phase.empty()) record.status += ":" + out.phase;
      record.nodes = (std::uint64_t)out.attempts;
      if (out.assignment) record.witness_hash = matching_hash(*out.assignment);
    }
  } catch (const resource_error&) {
    record.status = "generation-failure";
  }
  record.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return record;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, const std::string& out_path) {
  ExperimentOutcome outcome;
  std::set<std::pair<int, std::string>> done;
  bool ends_with_newline = true;
  {
    std::ifstream in(out_path);
    std::string line;
    while (in && std::getline(in, line)) {
      ends_with_newline = !in.eof();
      if (line.empty()) continue;
      try {
        nlohmann::json j = nlohmann::json::parse(line);
        if (j.at("config").get<std::uint64_t>() != config.config_hash) continue;
        done.insert({j.at("index").get<int>(), j.at("module").get<std::string>()});
        ++outcome.resumed;
      } catch (const std::exception&) {
        // torn or foreign line: leave it alone and recompute whatever it held
      }
    }
  }

  struct Task {
    int index;
    std::string module;
  };
  std::vector<Task> tasks;
  for (int index = 0; index < config.count; ++index)
    for (const std::string& module : config.modules)
      if (!done.count({index, module})) tasks.push_back({index, module});

  std::vector<ExperimentRecord> results(tasks.size());
  int workers = std::min<int>(config.workers, (int)tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      results[i] = run_task(config, tasks[i].index, tasks[i].module);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          results[i] = run_task(config, tasks[i].index, tasks[i].module);
      });
    for (std::thread& th : pool) th.join();
  }

  std::ofstream out(out_path, std::ios::app);
  if (!out) throw contract_error("cannot open output " + out_path);
  if (!ends_with_newline) out << "\n";
  for (ExperimentRecord& record : results) {
    out << record_json_line(record) << "\n";
    outcome.written.push_back(std::move(record));
  }
  return outcome;
}

}  // namespace rainbow
