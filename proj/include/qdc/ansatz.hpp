#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qdc/bitstring.hpp"
#include "qdc/circuit.hpp"
#include "qdc/graph.hpp"

namespace qdc {

enum class GateKind : std::uint8_t { kPartialMixer, kPhaseSeparator };

inline constexpr int kFrozenSlot = -1;

/// Abstract ansatz gate. A partial mixer on `target` is controlled by all of
/// the target's graph neighbors; a phase separator acts on every qubit.
struct Gate {
  GateKind kind = GateKind::kPartialMixer;
  int layer = 1;  // 1-based
  int target = -1;
  std::vector<int> controls;
  int slot = kFrozenSlot;

  bool frozen() const { return slot == kFrozenSlot; }
};

enum class LayerOrder : std::uint8_t {
  kMixerThenPhase,  // U_C(γ_k) U_M(α_k) per layer; the mixer acts first
  kPhaseThenMixer,
};

struct AnsatzConventions {
  /// Flip both exponent signs: exp(-iαM_j) mixers and exp(+iγC) phases.
  bool flip_signs = false;
  LayerOrder layer_order = LayerOrder::kMixerThenPhase;
};

/// Per-(node, layer) mixer freezing requested by the caller, on top of the
/// freezing implied by the initial state.
class MixerFreezing {
 public:
  MixerFreezing() = default;
  MixerFreezing(int num_nodes, int depth);

  void freeze(int node);
  void freeze_layer(int node, int layer);
  void freeze_from_layer(int node, int first_layer);
  bool is_frozen(int node, int layer) const;
  bool empty() const { return mask_.empty(); }

 private:
  int num_nodes_ = 0;
  int depth_ = 0;
  std::vector<std::uint8_t> mask_;
};

/// Parameterized DQVA circuit. Immutable once built.
class ParamCircuit {
 public:
  int num_qubits() const { return graph_.num_nodes(); }
  const Graph& graph() const { return graph_; }
  const Bitstring& initial_state() const { return init_; }
  int depth() const { return depth_; }
  const std::vector<int>& permutation() const { return sigma_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const MixerFreezing& extra_freezing() const { return freezing_; }
  const AnsatzConventions& conventions() const { return conventions_; }

  /// Free mixer angles plus one phase angle per layer.
  int num_free() const { return num_free_; }
  int num_free_mixers() const { return num_free_ - depth_; }

  /// Numeric gate list. Frozen mixers are the identity and are dropped; the
  /// phase separator becomes one single-qubit phase per qubit.
  OpCircuit lower() const;

  /// One line per gate: `PM j [controls] alpha_k^j=FREE|0` or `PS gamma_k=FREE`.
  std::string dump() const;

 private:
  friend ParamCircuit build_dqva(const Graph&, const Bitstring&, int, std::vector<int>, const MixerFreezing&,
                                 AnsatzConventions);

  Graph graph_;
  Bitstring init_;
  int depth_ = 0;
  std::vector<int> sigma_;
  std::vector<Gate> gates_;
  MixerFreezing freezing_;
  AnsatzConventions conventions_;
  int num_free_ = 0;
};

/// Builds the layered ansatz applied to |init>. Mixers whose node is set in
/// `init` are frozen in every layer; `frozen` adds caller-chosen freezing.
/// Throws std::invalid_argument for an infeasible init, a bad permutation or
/// depth < 1.
ParamCircuit build_dqva(const Graph& g, const Bitstring& init, int depth, std::vector<int> sigma,
                        const MixerFreezing& frozen = {}, AnsatzConventions conventions = {});

/// Convenience overload freezing `frozen_nodes` in every layer.
ParamCircuit build_dqva(const Graph& g, const Bitstring& init, int depth, std::vector<int> sigma,
                        std::span<const int> frozen_nodes, AnsatzConventions conventions = {});

/// Rebuilds `c` around a strictly heavier feasible initial state.
ParamCircuit dynamic_update(const ParamCircuit& c, const Bitstring& new_init);

std::vector<int> identity_permutation(int n);

/// Amplitude factor exp(-iγ H(b)) (or exp(+iγ H(b)) with flipped signs).
std::complex<double> phase_separator_action(double gamma, const Bitstring& b, bool flip_signs = false);

/// Wraps an angle into [0, 2π).
double wrap_angle(double a);

}  // namespace qdc
