#pragma once

#include <cstdint>
#include <vector>

#include "qdc/circuit.hpp"

namespace qdc {

enum class PauliBasis : std::uint8_t { kX = 0, kY = 1, kZ = 2 };

/// Pauli eigenstates used at cut inputs. The value equals 2*basis + bit, with
/// bit 0 the +1 eigenstate (|+>, |+i>, |0>) and bit 1 the -1 eigenstate.
enum class PrepState : std::uint8_t { kX0 = 0, kX1 = 1, kY0 = 2, kY1 = 3, kZ0 = 4, kZ1 = 5 };

constexpr PrepState prep_state(PauliBasis basis, int bit) {
  return static_cast<PrepState>(2 * static_cast<int>(basis) + (bit & 1));
}
constexpr PauliBasis prep_basis(PrepState s) { return static_cast<PauliBasis>(static_cast<int>(s) / 2); }
constexpr int prep_bit(PrepState s) { return static_cast<int>(s) % 2; }

/// A wire segment owned by a fragment. It starts either in the computational
/// basis state `init_bit` or, when `cut_in >= 0`, in a prepared eigenstate;
/// it ends either in a final measurement or, when `cut_out >= 0`, in a basis
/// measurement feeding that cut.
struct FragmentQubit {
  int origin = -1;
  bool init_bit = false;
  int cut_in = -1;
  int cut_out = -1;

  bool is_final() const { return cut_out < 0; }
};

struct Fragment {
  std::vector<FragmentQubit> qubits;
  OpCircuit circuit;  // over local qubit indices
  /// Local qubit indices of cut inputs / outputs, in ascending cut-id order.
  std::vector<int> cut_inputs;
  std::vector<int> cut_outputs;

  int num_qubits() const { return static_cast<int>(qubits.size()); }
  /// 3^outputs * 6^inputs preparation/measurement settings.
  std::size_t num_variants() const;
  /// Variant index layout: measurement digits (base 3, first output least
  /// significant) followed by preparation digits (base 6).
  std::size_t variant_index(const std::vector<PauliBasis>& meas, const std::vector<PrepState>& prep) const;
  void decode_variant(std::size_t index, std::vector<PauliBasis>& meas, std::vector<PrepState>& prep) const;
};

}  // namespace qdc
