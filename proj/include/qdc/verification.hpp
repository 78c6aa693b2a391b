#pragma once

#include <cstdint>
#include <vector>

#include "qdc/ansatz.hpp"
#include "qdc/cutting.hpp"
#include "qdc/graph.hpp"
#include "qdc/solver.hpp"

namespace qdc {

/// A DQVA circuit on a random graph whose hot set forces exactly the
/// requested number of cuts.
struct CutInstance {
  Graph graph;
  Partition partition;
  HotColdSplit split;
  ParamCircuit circuit;
  CutCircuit cut;
  std::vector<double> theta;
};

/// Throws std::runtime_error if no instance with `cuts` cuts is found.
CutInstance random_cut_instance(int n, int cuts, int depth, std::uint64_t seed);

struct CuttingTrial {
  int num_qubits = 0;
  int num_cuts = 0;
  int depth = 0;
  std::size_t num_variants = 0;
  std::size_t num_terms = 0;
  double tv = 0.0;
  double max_abs = 0.0;
  double pre_clamp_min = 0.0;
  double pre_clamp_sum = 0.0;
  double expectation_error = 0.0;  // fast path vs uncut
};

/// Cut, evaluate and reconstruct one instance, compared with the uncut
/// statevector.
CuttingTrial run_cutting_trial(const CutInstance& inst);

}  // namespace qdc
