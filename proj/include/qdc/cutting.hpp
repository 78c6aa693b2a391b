#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qdc/ansatz.hpp"
#include "qdc/bitstring.hpp"
#include "qdc/circuit.hpp"
#include "qdc/fragment.hpp"
#include "qdc/graph.hpp"
#include "qdc/simulator.hpp"

namespace qdc {

/// A severed wire: `qubit` is cut after op `position` of the uncut circuit,
/// leaving fragment `from` (measured) and entering fragment `to` (prepared).
struct CutPoint {
  int qubit = -1;
  int position = -1;
  int from = -1;
  int to = -1;
};

/// Two fragments plus the cuts joining them. Cut ids index `cuts`.
struct CutCircuit {
  int num_qubits = 0;
  int num_params = 0;
  std::vector<Fragment> fragments;
  std::vector<CutPoint> cuts;

  int num_cuts() const { return static_cast<int>(cuts.size()); }
};

/// γ_{bb'} = 2δ_{bb'} - 2/3.
double gamma_coeff(int b, int b_prime);

/// Splits `circuit` into two fragments. `op_fragment[i]` (0 or 1) assigns op
/// i; `home[q]` is the fragment that reports qubit q's final bit. Diagonal
/// single-qubit ops that precede any other op on their wire act on a basis
/// state and follow the wire's first real op. A wire is cut each time it
/// moves between fragments.
CutCircuit cut_circuit(const OpCircuit& circuit, const Bitstring& init, std::span<const int> op_fragment,
                       std::span<const int> home);

/// Cuts a DQVA circuit whose mixers are ordered first-block then
/// second-block. Fragment 0 holds the first block (the side of the hot nodes,
/// or of sigma[0] when there are none). Throws std::runtime_error unless the
/// cuts fall exactly on the wires of `inter_neighbors`, once each.
CutCircuit place_cuts(const ParamCircuit& circuit, const Partition& part, std::span<const int> hot,
                      std::span<const int> inter_neighbors);

/// Distributions of one fragment, indexed by Fragment::variant_index.
struct FragmentData {
  std::vector<Distribution> variants;
};
using FragmentResults = std::vector<FragmentData>;

/// All preparation/measurement variants of one fragment. Cut inputs are
/// simulated once per computational basis input and the six eigenstate
/// preparations are formed as linear combinations of those statevectors.
FragmentData evaluate_fragment(const Fragment& f, std::span<const double> theta);
FragmentResults evaluate_fragments(const CutCircuit& cc, std::span<const double> theta);

struct Reconstruction {
  Distribution distribution;  // clamped and renormalized
  int num_cuts = 0;
  std::size_t num_variants = 0;
  std::size_t num_terms = 0;  // (basis, b, b') combinations, 12^cuts
  double pre_clamp_min = 0.0;
  double pre_clamp_sum = 0.0;
};

/// Recombines fragment distributions into the uncut output distribution by
/// applying the single-cut identity once per cut.
Reconstruction reconstruct(const FragmentResults& data, const CutCircuit& cc);

/// Expected Hamming weight of the (unclamped) reconstructed distribution,
/// computed without materializing the 2^n vector.
double reconstructed_expectation(const FragmentResults& data, const CutCircuit& cc);

/// Number of (basis, b, b') combinations for `cuts` cuts.
std::size_t reconstruction_terms(int cuts);

}  // namespace qdc
