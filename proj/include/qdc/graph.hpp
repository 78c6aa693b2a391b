#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qdc {

using Edge = std::pair<int, int>;

/// Undirected simple graph on nodes 0..n-1. Edges are stored once as (u, v)
/// with u < v, sorted lexicographically; neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicate edges or
  /// out-of-range endpoints. Endpoint order within an edge is irrelevant.
  Graph(int num_nodes, std::vector<Edge> edges);

  int num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }
  bool has_edge(int u, int v) const;
  /// Index of {u, v} in edges(), or -1.
  int edge_index(int u, int v) const;

  /// Neighbor bitmask of v. Only valid for graphs with at most 64 nodes.
  std::uint64_t neighbor_mask(int v) const;

  /// Subgraph induced by `nodes`, relabelled 0..k-1 in the given order.
  Graph induced(std::span<const int> nodes) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);

/// Pairing-model d-regular graph; resamples until the pairing is simple.
Graph random_regular(int n, int d, std::uint64_t seed);
Graph erdos_renyi(int n, double p_edge, std::uint64_t seed);

/// Text format: "n m" header, then m lines "u v" (u < v, sorted), LF endings.
/// The reader ignores everything after '#' on a line and blank lines.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::filesystem::path& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::filesystem::path& path, const Graph& g);

enum class Side : std::uint8_t { kA = 0, kB = 1 };

constexpr Side other(Side s) { return s == Side::kA ? Side::kB : Side::kA; }
constexpr char side_name(Side s) { return s == Side::kA ? 'A' : 'B'; }

/// Balanced bisection of a graph's nodes.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument if sizes mismatch or the split is unbalanced.
  Partition(const Graph& g, std::vector<Side> sides);

  Side side(int v) const { return sides_[v]; }
  const std::vector<Side>& sides() const { return sides_; }
  const std::vector<int>& nodes(Side s) const { return s == Side::kA ? nodes_a_ : nodes_b_; }
  const std::vector<Edge>& crossing_edges() const { return crossing_; }
  std::size_t num_crossing() const { return crossing_.size(); }

  bool operator==(const Partition& other) const { return sides_ == other.sides_; }

 private:
  std::vector<Side> sides_;
  std::vector<int> nodes_a_;
  std::vector<int> nodes_b_;
  std::vector<Edge> crossing_;
};

struct CutClassification {
  std::vector<int> uncut_a;
  std::vector<int> cut_a;
  std::vector<int> uncut_b;
  std::vector<int> cut_b;

  const std::vector<int>& cut(Side s) const { return s == Side::kA ? cut_a : cut_b; }
  const std::vector<int>& uncut(Side s) const { return s == Side::kA ? uncut_a : uncut_b; }
  /// Q^c = Q^c_A ∪ Q^c_B, sorted.
  std::vector<int> all_cut() const;
};

/// Edge weights, parallel to Graph::edges(). Must be non-negative.
using EdgeWeights = std::vector<double>;

/// Pass-based Kernighan-Lin bisection from a seeded random balanced split.
/// Without weights every edge counts 1. Gain ties go to the lowest node
/// indices. For odd n the larger side is chosen by the seed.
Partition kernighan_lin_bisect(const Graph& g, std::uint64_t seed,
                               const std::optional<EdgeWeights>& weights = std::nullopt);

/// Uniformly random balanced bisection (the baseline KL is compared against).
Partition random_bisection(const Graph& g, std::uint64_t seed);

/// Sum of weights of crossing edges (edge count when weights are absent).
double crossing_weight(const Graph& g, const Partition& part,
                       const std::optional<EdgeWeights>& weights = std::nullopt);

/// Best gain over all single (a, b) swaps; non-positive at a KL local optimum.
double best_swap_gain(const Graph& g, const Partition& part,
                      const std::optional<EdgeWeights>& weights = std::nullopt);

CutClassification classify_nodes(const Graph& g, const Partition& part);

}  // namespace qdc
