#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qdc/ansatz.hpp"
#include "qdc/bitstring.hpp"
#include "qdc/graph.hpp"

namespace qdc {

enum class WarmStart : std::uint8_t { kAllZeros, kGreedy };

struct QdcConfig {
  int rounds = 8;
  int max_cuts = 1;  // t
  int depth = 1;     // p
  std::uint64_t seed = 0;
  int max_evals = 0;  // 0 selects 50 * (number of free parameters)
  double ftol = 1e-4;
  WarmStart warm_start = WarmStart::kAllZeros;
  double bias_epsilon = 0.1;
  int repetitions = 5;
  int max_fragment_qubits = 15;
  int shots = 0;  // 0 reads the exact reconstructed distribution
  double support_threshold = 1e-9;
  AnsatzConventions conventions;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct HotColdSplit {
  std::vector<int> hot;
  std::vector<int> cold;  // every other cut node, both sides
  std::vector<int> inter_neighbors;
  Side first_block = Side::kA;
  std::int64_t cost = 0;
};

/// Σ_{i∈cold} Σ_{j∈N(i), side(j)≠side(i)} deg(j).
std::int64_t cut_cost(const Graph& g, const Partition& part, std::span<const int> cold);

/// Neighbors across the partition of any hot node, sorted, without repeats.
std::vector<int> inter_graph_neighbors(const Graph& g, const Partition& part, std::span<const int> hot);

inline constexpr int kHotSearchLog2Cap = 20;

/// Minimizes the cut cost of the cold set over both block orders and every
/// subset of the first block's cut nodes with at most t inter-graph
/// neighbors. Ties: fewer inter-graph neighbors, then the lexicographically
/// smallest hot set, then A first. Nodes listed in `ineligible` always stay
/// cold. Past 2^20 subsets a greedy rule is used instead.
HotColdSplit select_hot_nodes(const Graph& g, const Partition& part, int t, std::span<const int> ineligible = {});

/// All zeros, or the greedy maximal independent set visiting nodes by
/// ascending degree (ties by index).
Bitstring warm_start(const Graph& g, WarmStart mode);

struct InnerRecord {
  HotColdSplit split;
  int num_cuts = 0;
  std::vector<int> fragment_qubits;
  int num_free_params = 0;
  int optimizer_evals = 0;
  bool optimizer_converged = false;
  double expectation = 0.0;
  std::vector<double> params;
  double pre_clamp_min = 0.0;
  double pre_clamp_sum = 0.0;
  Bitstring candidate;
  bool accepted = false;
};

struct RoundRecord {
  int round = 0;  // 1-based
  Partition partition;
  std::size_t crossing_edges = 0;
  std::vector<InnerRecord> iterations;
  Bitstring state;  // s at the end of the round
  Bitstring best;   // s_best at the end of the round
};

struct RunRecord {
  Bitstring warm_start;
  std::vector<RoundRecord> rounds;
  /// Best-so-far Hamming weight after each round.
  std::vector<int> trace;
};

struct QdcResult {
  Bitstring best;
  RunRecord record;
};

/// Quantum divide and conquer. Each round bisects the graph (biased toward
/// cutting edges at the current state after round 1), then repeatedly picks
/// hot nodes, builds the cut ansatz, optimizes the reconstructed expected
/// Hamming weight and moves to the heaviest feasible string in the support,
/// for as long as the weight strictly improves.
QdcResult qdc_solve(const Graph& g, const QdcConfig& cfg);

/// Best of `cfg.repetitions` runs with seeds derived from cfg.seed. Returns
/// every run; `best_index` points at the winner (first on ties).
struct RepeatedResult {
  std::vector<QdcResult> runs;
  std::size_t best_index = 0;
};
RepeatedResult qdc_best_of(const Graph& g, const QdcConfig& cfg);

}  // namespace qdc
