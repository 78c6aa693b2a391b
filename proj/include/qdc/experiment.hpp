#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdc/graph.hpp"
#include "qdc/solver.hpp"

namespace qdc {

/// `regular:<d>` or `er:<p>`.
struct GraphFamily {
  enum class Kind : std::uint8_t { kRegular, kErdosRenyi } kind = Kind::kRegular;
  int degree = 3;
  double edge_prob = 0.1;

  static GraphFamily parse(const std::string& text);
  std::string name() const;  // e.g. "regular3", "er0.1"
  Graph generate(int n, std::uint64_t seed) const;
};

struct ExperimentSpec {
  std::string name = "experiment";
  std::vector<GraphFamily> families{GraphFamily{}};
  int n = 14;
  int graphs = 10;
  std::vector<std::string> algorithms{"qdc", "bh", "brute"};
  std::vector<int> t_values{0, 1, 2, 3};
  QdcConfig qdc;  // rounds, depth, repetitions, optimizer budget, ...
  std::optional<std::uint64_t> master_seed;
  std::filesystem::path output = "out";
  int workers = 1;
  int brute_cap = 26;

  /// Throws std::invalid_argument on a bad key or value.
  void set(const std::string& key, const std::string& value);
  /// Throws std::invalid_argument when the spec cannot run.
  void validate() const;
};

/// Flat `key = value` lines; `#` starts a comment.
ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec read_experiment_spec(const std::filesystem::path& path);

/// Series key: algorithm name, with the cut budget for qdc ("qdc_t2").
struct GraphOutcome {
  std::string graph_id;
  std::string family;
  int num_nodes = 0;
  int bh_weight = 0;
  std::optional<int> exact_weight;  // brute force, when n <= brute_cap
  /// Best-of-repetitions weight after each round, per series.
  std::map<std::string, std::vector<int>> best_trace;
};

struct SummaryRow {
  std::string family;
  std::string algorithm;
  std::optional<int> t;
  int round = 0;  // 0 for single-shot algorithms
  int count = 0;
  double mean_weight = 0.0;
  double stderr_weight = 0.0;
  double mean_ratio = 0.0;
};

struct ExperimentSummary {
  std::filesystem::path directory;
  std::vector<GraphOutcome> graphs;
  std::vector<SummaryRow> rows;
  std::vector<std::string> failures;
  /// Independent re-check of every written result file.
  int files_checked = 0;
  std::vector<std::string> violations;
};

/// Runs every (graph, algorithm, t, repetition) job, writes
/// <output>/<name>/<graph_id>/<algorithm>/<rep>.json and summary.csv, then
/// re-reads the result files and checks feasibility and monotone traces.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

/// Re-reads the result files under an experiment directory. Returns the
/// number of files checked and appends one message per violation.
int verify_experiment_outputs(const std::filesystem::path& dir, std::vector<std::string>& violations);

}  // namespace qdc
