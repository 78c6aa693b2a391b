#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qdc {

enum class OpKind : std::uint8_t {
  /// exp(i*a*X) on the target, applied only where every control qubit is 0.
  kMixer,
  /// diag(1, exp(-i*a)) on the target.
  kPhase,
  kX,
  kH,
  kS,
  kSdg,
};

/// One primitive gate. The angle is either a constant or `coeff * theta[slot]`.
struct Op {
  OpKind kind = OpKind::kX;
  int target = 0;
  std::uint64_t controls = 0;
  int slot = -1;
  double coeff = 1.0;
  double value = 0.0;

  double angle(std::span<const double> theta) const {
    return slot < 0 ? value : coeff * theta[static_cast<std::size_t>(slot)];
  }
  bool touches(int q) const { return target == q || ((controls >> q) & 1U); }
  std::uint64_t support() const { return controls | (std::uint64_t{1} << target); }
};

/// Flat gate list over `num_qubits` wires with `num_params` free angles.
struct OpCircuit {
  int num_qubits = 0;
  int num_params = 0;
  std::vector<Op> ops;

  OpCircuit() = default;
  OpCircuit(int qubits, int params) : num_qubits(qubits), num_params(params) {}

  OpCircuit& mixer(int target, std::uint64_t controls, double angle);
  OpCircuit& mixer_slot(int target, std::uint64_t controls, int slot, double coeff = 1.0);
  OpCircuit& phase(int target, double angle);
  OpCircuit& phase_slot(int target, int slot, double coeff = 1.0);
  OpCircuit& gate(OpKind kind, int target);

  /// Throws std::invalid_argument on out-of-range qubits/slots or a target
  /// listed among its own controls.
  void validate() const;
};

std::string to_string(OpKind kind);

}  // namespace qdc
