#include "qdc/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdc/classical_mis.hpp"

namespace qdc {

MixerFreezing::MixerFreezing(int num_nodes, int depth)
    : num_nodes_(num_nodes), depth_(depth), mask_(static_cast<std::size_t>(num_nodes) * depth, 0) {
  if (num_nodes < 0 || depth < 1) throw std::invalid_argument("MixerFreezing: bad dimensions");
}

void MixerFreezing::freeze(int node) { freeze_from_layer(node, 1); }

void MixerFreezing::freeze_layer(int node, int layer) {
  if (node < 0 || node >= num_nodes_ || layer < 1 || layer > depth_) {
    throw std::out_of_range("MixerFreezing: node or layer out of range");
  }
  mask_[static_cast<std::size_t>(layer - 1) * num_nodes_ + node] = 1;
}

void MixerFreezing::freeze_from_layer(int node, int first_layer) {
  for (int k = std::max(first_layer, 1); k <= depth_; ++k) freeze_layer(node, k);
}

bool MixerFreezing::is_frozen(int node, int layer) const {
  if (mask_.empty()) return false;
  if (node < 0 || node >= num_nodes_ || layer < 1 || layer > depth_) return false;
  return mask_[static_cast<std::size_t>(layer - 1) * num_nodes_ + node] != 0;
}

std::vector<int> identity_permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

ParamCircuit build_dqva(const Graph& g, const Bitstring& init, int depth, std::vector<int> sigma,
                        const MixerFreezing& frozen, AnsatzConventions conventions) {
  const int n = g.num_nodes();
  if (depth < 1) throw std::invalid_argument("build_dqva: depth must be >= 1");
  if (static_cast<int>(init.size()) != n) throw std::invalid_argument("build_dqva: init length mismatch");
  if (!is_independent_set(g, init)) throw std::invalid_argument("build_dqva: initial state is infeasible");
  {
    std::vector<int> sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != identity_permutation(n)) throw std::invalid_argument("build_dqva: sigma is not a permutation");
  }

  ParamCircuit c;
  c.graph_ = g;
  c.init_ = init;
  c.depth_ = depth;
  c.sigma_ = std::move(sigma);
  c.freezing_ = frozen;
  c.conventions_ = conventions;

  int slot = 0;
  auto add_phase = [&](int layer) {
    Gate gate;
    gate.kind = GateKind::kPhaseSeparator;
    gate.layer = layer;
    gate.slot = slot++;
    c.gates_.push_back(std::move(gate));
  };
  for (int k = 1; k <= depth; ++k) {
    if (conventions.layer_order == LayerOrder::kPhaseThenMixer) add_phase(k);
    for (int j : c.sigma_) {
      Gate gate;
      gate.kind = GateKind::kPartialMixer;
      gate.layer = k;
      gate.target = j;
      gate.controls = g.neighbors(j);
      bool is_frozen = init[j] || frozen.is_frozen(j, k);
      gate.slot = is_frozen ? kFrozenSlot : slot++;
      c.gates_.push_back(std::move(gate));
    }
    if (conventions.layer_order == LayerOrder::kMixerThenPhase) add_phase(k);
  }
  c.num_free_ = slot;
  return c;
}

ParamCircuit build_dqva(const Graph& g, const Bitstring& init, int depth, std::vector<int> sigma,
                        std::span<const int> frozen_nodes, AnsatzConventions conventions) {
  MixerFreezing freezing(g.num_nodes(), depth);
  for (int v : frozen_nodes) freezing.freeze(v);
  return build_dqva(g, init, depth, std::move(sigma), freezing, conventions);
}

ParamCircuit dynamic_update(const ParamCircuit& c, const Bitstring& new_init) {
  if (new_init.size() != c.initial_state().size()) {
    throw std::invalid_argument("dynamic_update: length mismatch");
  }
  if (hamming_weight(new_init) <= hamming_weight(c.initial_state())) {
    throw std::invalid_argument("dynamic_update: new initial state does not improve the Hamming weight");
  }
  if (!is_independent_set(c.graph(), new_init)) {
    throw std::invalid_argument("dynamic_update: new initial state is infeasible");
  }
  return build_dqva(c.graph(), new_init, c.depth(), c.permutation(), c.extra_freezing(), c.conventions());
}

OpCircuit ParamCircuit::lower() const {
  const int n = num_qubits();
  OpCircuit out(n, num_free_);
  const double sign = conventions_.flip_signs ? -1.0 : 1.0;
  for (const Gate& gate : gates_) {
    if (gate.kind == GateKind::kPartialMixer) {
      if (gate.frozen()) continue;
      std::uint64_t mask = 0;
      for (int u : gate.controls) mask |= std::uint64_t{1} << u;
      out.mixer_slot(gate.target, mask, gate.slot, sign);
    } else {
      for (int q = 0; q < n; ++q) out.phase_slot(q, gate.slot, sign);
    }
  }
  return out;
}

std::string ParamCircuit::dump() const {
  std::ostringstream os;
  for (const Gate& gate : gates_) {
    if (gate.kind == GateKind::kPartialMixer) {
      os << "PM " << gate.target << " [";
      for (std::size_t i = 0; i < gate.controls.size(); ++i) {
        if (i) os << ' ';
        os << gate.controls[i];
      }
      os << "] alpha_" << gate.layer << '^' << gate.target << '=' << (gate.frozen() ? "0" : "FREE") << '\n';
    } else {
      os << "PS gamma_" << gate.layer << "=FREE\n";
    }
  }
  return os.str();
}

std::complex<double> phase_separator_action(double gamma, const Bitstring& b, bool flip_signs) {
  const double sign = flip_signs ? 1.0 : -1.0;
  return std::polar(1.0, sign * gamma * hamming_weight(b));
}

double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(a, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

}  // namespace qdc
