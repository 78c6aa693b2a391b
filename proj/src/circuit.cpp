#include "qdc/circuit.hpp"

#include <stdexcept>

namespace qdc {

OpCircuit& OpCircuit::mixer(int target, std::uint64_t controls, double angle) {
  ops.push_back(Op{OpKind::kMixer, target, controls, -1, 1.0, angle});
  return *this;
}

OpCircuit& OpCircuit::mixer_slot(int target, std::uint64_t controls, int slot, double coeff) {
  ops.push_back(Op{OpKind::kMixer, target, controls, slot, coeff, 0.0});
  return *this;
}

OpCircuit& OpCircuit::phase(int target, double angle) {
  ops.push_back(Op{OpKind::kPhase, target, 0, -1, 1.0, angle});
  return *this;
}

OpCircuit& OpCircuit::phase_slot(int target, int slot, double coeff) {
  ops.push_back(Op{OpKind::kPhase, target, 0, slot, coeff, 0.0});
  return *this;
}

OpCircuit& OpCircuit::gate(OpKind kind, int target) {
  ops.push_back(Op{kind, target, 0, -1, 1.0, 0.0});
  return *this;
}

void OpCircuit::validate() const {
  if (num_qubits < 0 || num_qubits > 62) throw std::invalid_argument("OpCircuit: qubit count out of range");
  const std::uint64_t all = num_qubits == 0 ? 0 : ((std::uint64_t{1} << num_qubits) - 1);
  for (const Op& op : ops) {
    if (op.target < 0 || op.target >= num_qubits) throw std::invalid_argument("OpCircuit: target out of range");
    if (op.controls & ~all) throw std::invalid_argument("OpCircuit: control out of range");
    if ((op.controls >> op.target) & 1U) throw std::invalid_argument("OpCircuit: target is also a control");
    if (op.slot >= num_params) throw std::invalid_argument("OpCircuit: parameter slot out of range");
    if (op.controls != 0 && op.kind != OpKind::kMixer) {
      throw std::invalid_argument("OpCircuit: only mixers may carry controls");
    }
  }
}

std::string to_string(OpKind kind) {
  switch (kind) {
    case OpKind::kMixer: return "mixer";
    case OpKind::kPhase: return "phase";
    case OpKind::kX: return "x";
    case OpKind::kH: return "h";
    case OpKind::kS: return "s";
    case OpKind::kSdg: return "sdg";
  }
  return "?";
}

}  // namespace qdc
