#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rainbow/transform.hpp"

namespace rainbow {

enum class InstanceKind {
  complete,
  extremal,
  perturbed_extremal,
  random_above_threshold,
  adversarial_near_extremal,
};

const char* to_string(InstanceKind kind);
InstanceKind instance_kind_of(const std::string& name);  // hyphenated names

/// One reproducible test instance. The seed fully determines the family;
/// perturbation, density and l only apply to the kinds that read them.
struct InstanceSpec {
  InstanceKind kind = InstanceKind::complete;
  int n = 0;
  int k = 2;
  int l = 1;              // degree level for the threshold kinds
  int perturbation = 0;   // symmetric-difference size for the perturbed kinds
  double density = 0.55;  // starting edge density for random-above-threshold
  std::uint64_t seed = 1;
};

/// Deterministic for a fixed spec. random-above-threshold retries Bernoulli
/// layers, greedily topping up deficient l-sets, until every layer has
/// min l-degree strictly above the threshold; more than `rejection_cap`
/// layer draws raises resource_error. perturbed-extremal adds exactly
/// `perturbation` non-pattern edges, so the symmetric difference from the
/// pure pattern family is the perturbation count. adversarial-near-extremal
/// spends half the perturbation on additions through one fixed vertex and
/// half deleting pattern edges.
RainbowFamily generate_instance(const InstanceSpec& spec, int rejection_cap = 100'000);

struct SweepReport {
  int n = 0, k = 0, l = 0;
  int trials = 0;
  long long threshold = 0;   // the degree bound the layers must beat
  int counterexamples = 0;   // above-threshold instances with no rainbow PM
  int timeouts = 0;
  int generation_failures = 0;
  std::vector<std::uint64_t> archived_seeds;
};

/// Random above-threshold instances vs the exact solver. Instances without
/// a rainbow PM are never discarded: their full families are appended to
/// `archive_path` (JSONL) when given, and their seeds reported.
SweepReport verify_theorem_sweep(int n, int k, int l, int trials, std::uint64_t seed = 1,
                                 const std::string& archive_path = "");

/// Flat key=value experiment description. Unknown keys, missing required
/// keys and unparsable values raise parse_error with the offending line.
struct ExperimentConfig {
  InstanceSpec base;
  int count = 1;
  std::vector<std::string> modules = {"solver"};  // "solver" and/or "pipeline"
  std::uint64_t budget = 0;                       // 0 = solver default
  int workers = 1;
  std::uint64_t config_hash = 0;  // over the normalized key=value text
};

ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

struct ExperimentRecord {
  int index = 0;
  std::string module;
  InstanceSpec spec;
  std::string status;
  std::uint64_t witness_hash = 0;  // 0 when there is no witness
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;  // the one field exempt from reproducibility
  std::uint64_t config_hash = 0;
  std::string version;
};

std::string record_json_line(const ExperimentRecord& r);

struct ExperimentOutcome {
  std::vector<ExperimentRecord> written;  // this run only, in file order
  int resumed = 0;                        // records already present and kept
};

/// Runs count instances through every requested module and appends one JSONL
/// record per (instance, module) to out_path. Records already in the file
/// for the same config hash are kept and not recomputed, so interrupted runs
/// resume where they stopped and a finished run appends nothing.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const std::string& out_path);

const char* harness_version();

}  // namespace rainbow
