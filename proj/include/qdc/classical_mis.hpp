#pragma once

#include <cstdint>
#include <vector>

#include "qdc/bitstring.hpp"
#include "qdc/graph.hpp"

namespace qdc {

/// True iff no edge has both endpoints set. Throws on length mismatch.
bool is_independent_set(const Graph& g, const Bitstring& b);

inline constexpr int kDefaultBruteForceLimit = 26;

/// Exact maximum independent set by depth-first enumeration in lexicographic
/// order (0 before 1 at each node), so among maximum sets the
/// lexicographically smallest bitstring is returned.
Bitstring brute_force_mis(const Graph& g, int max_nodes = kDefaultBruteForceLimit);

/// Clique-removal heuristic: repeatedly runs the Ramsey recursion, removes
/// the clique it finds, and keeps the largest independent set seen. The
/// pivot is the lowest-index node of maximum degree in the current subgraph.
Bitstring boppana_halldorsson(const Graph& g);

struct DivideAndConquerResult {
  Bitstring best;
  /// Best-so-far Hamming weight after each round.
  std::vector<int> trace;
  /// Crossing-edge count of each round's bisection.
  std::vector<int> crossing_edges;
};

/// Iterated bisection + Boppana-Halldórsson on both halves. Rounds after the
/// first bias Kernighan-Lin toward cutting edges incident to selected nodes
/// (weight x bias_epsilon). Each half is solved on the nodes that are not
/// adjacent to the current solution; additions merge A first, then B, in
/// ascending node order, skipping any node with a selected neighbor.
DivideAndConquerResult classical_divide_and_conquer(const Graph& g, int rounds, std::uint64_t seed,
                                                    double bias_epsilon = 0.1);

/// H(dc) / H(bh). Throws std::domain_error when bh is empty.
double bh_ratio(const Bitstring& dc, const Bitstring& bh);

/// Edge weights that scale edges touching a selected node by `epsilon`.
EdgeWeights biased_edge_weights(const Graph& g, const Bitstring& selected, double epsilon);

}  // namespace qdc
