#include "qdc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace qdc {

Distribution::Distribution(int num_bits) : num_bits_(num_bits), values_(std::size_t{1} << num_bits, 0.0) {
  if (num_bits < 0 || num_bits > kMaxSimulatedQubits) throw std::invalid_argument("Distribution: bad bit count");
}

Distribution::Distribution(int num_bits, std::vector<double> values) : num_bits_(num_bits), values_(std::move(values)) {
  if (num_bits < 0 || num_bits > kMaxSimulatedQubits || values_.size() != (std::size_t{1} << num_bits)) {
    throw std::invalid_argument("Distribution: value count must be 2^num_bits");
  }
}

double Distribution::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

std::vector<std::pair<Bitstring, double>> Distribution::top_k(std::size_t k) const {
  std::vector<std::uint64_t> idx(values_.size());
  std::iota(idx.begin(), idx.end(), std::uint64_t{0});
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::uint64_t a, std::uint64_t b) {
                      return values_[a] != values_[b] ? values_[a] > values_[b] : a < b;
                    });
  std::vector<std::pair<Bitstring, double>> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(Bitstring::from_index(idx[i], num_bits_), values_[idx[i]]);
  return out;
}

Statevector::Statevector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument("Statevector: " + std::to_string(num_qubits) + " qubits is out of range");
  }
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector Statevector::basis_state(int num_qubits, std::uint64_t index) {
  Statevector psi(num_qubits);
  if (index >= psi.dim()) throw std::out_of_range("Statevector::basis_state: index out of range");
  psi.amps_[0] = 0.0;
  psi.amps_[index] = 1.0;
  return psi;
}

double Statevector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

Distribution Statevector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return Distribution(n_, std::move(p));
}

namespace {

// Visits every index with bit `target` clear, in ascending order.
template <typename F>
void for_each_pair(std::size_t dim, int target, F&& f) {
  const std::size_t stride = std::size_t{1} << target;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) f(i, i + stride);
  }
}

void check_qubit(const Statevector& psi, int q) {
  if (q < 0 || q >= psi.num_qubits()) throw std::out_of_range("qubit index out of range");
}

}  // namespace

void apply_partial_mixer(Statevector& psi, int target, std::uint64_t controls, double alpha) {
  check_qubit(psi, target);
  const double c = std::cos(alpha);
  const Amplitude is{0.0, std::sin(alpha)};
  auto amps = psi.amplitudes();
  for_each_pair(psi.dim(), target, [&](std::size_t i0, std::size_t i1) {
    if (i0 & controls) return;
    const Amplitude a = amps[i0], b = amps[i1];
    amps[i0] = c * a + is * b;
    amps[i1] = is * a + c * b;
  });
}

void apply_phase(Statevector& psi, int target, double angle) {
  check_qubit(psi, target);
  const Amplitude ph = std::polar(1.0, -angle);
  auto amps = psi.amplitudes();
  for_each_pair(psi.dim(), target, [&](std::size_t, std::size_t i1) { amps[i1] *= ph; });
}

void apply_single_qubit(Statevector& psi, int target, const std::array<Amplitude, 4>& m) {
  check_qubit(psi, target);
  auto amps = psi.amplitudes();
  for_each_pair(psi.dim(), target, [&](std::size_t i0, std::size_t i1) {
    const Amplitude a = amps[i0], b = amps[i1];
    amps[i0] = m[0] * a + m[1] * b;
    amps[i1] = m[2] * a + m[3] * b;
  });
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
const std::array<Amplitude, 4> kHadamard{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
const std::array<Amplitude, 4> kPauliX{0.0, 1.0, 1.0, 0.0};
const std::array<Amplitude, 4> kS{1.0, 0.0, 0.0, Amplitude{0.0, 1.0}};
const std::array<Amplitude, 4> kSdg{1.0, 0.0, 0.0, Amplitude{0.0, -1.0}};

}  // namespace

void apply_op(Statevector& psi, const Op& op, std::span<const double> theta) {
  switch (op.kind) {
    case OpKind::kMixer: apply_partial_mixer(psi, op.target, op.controls, op.angle(theta)); break;
    case OpKind::kPhase: apply_phase(psi, op.target, op.angle(theta)); break;
    case OpKind::kX: apply_single_qubit(psi, op.target, kPauliX); break;
    case OpKind::kH: apply_single_qubit(psi, op.target, kHadamard); break;
    case OpKind::kS: apply_single_qubit(psi, op.target, kS); break;
    case OpKind::kSdg: apply_single_qubit(psi, op.target, kSdg); break;
  }
}

void rotate_to_basis(Statevector& psi, int q, PauliBasis basis) {
  switch (basis) {
    case PauliBasis::kZ: break;
    case PauliBasis::kX: apply_single_qubit(psi, q, kHadamard); break;
    case PauliBasis::kY:
      apply_single_qubit(psi, q, kSdg);
      apply_single_qubit(psi, q, kHadamard);
      break;
  }
}

void prepare_eigenstate(Statevector& psi, int q, PrepState state) {
  if (prep_bit(state) == 1) apply_single_qubit(psi, q, kPauliX);
  switch (prep_basis(state)) {
    case PauliBasis::kZ: break;
    case PauliBasis::kX: apply_single_qubit(psi, q, kHadamard); break;
    case PauliBasis::kY:
      apply_single_qubit(psi, q, kHadamard);
      apply_single_qubit(psi, q, kS);
      break;
  }
}

Statevector simulate(const OpCircuit& circuit, std::span<const double> theta, const Bitstring& init) {
  if (static_cast<int>(init.size()) != circuit.num_qubits) {
    throw std::invalid_argument("simulate: initial state length differs from qubit count");
  }
  if (static_cast<int>(theta.size()) != circuit.num_params) {
    throw std::invalid_argument("simulate: expected " + std::to_string(circuit.num_params) +
                                " parameter values, got " + std::to_string(theta.size()));
  }
  circuit.validate();
  Statevector psi = Statevector::basis_state(circuit.num_qubits, init.to_index());
  for (const Op& op : circuit.ops) apply_op(psi, op, theta);
  return psi;
}

Statevector simulate(const ParamCircuit& circuit, std::span<const double> theta) {
  return simulate(circuit.lower(), theta, circuit.initial_state());
}

Distribution fragment_probabilities(const Fragment& f, std::span<const double> theta,
                                    std::span<const PrepState> prep, std::span<const PauliBasis> meas) {
  if (prep.size() != f.cut_inputs.size() || meas.size() != f.cut_outputs.size()) {
    throw std::invalid_argument("fragment_probabilities: need one label per cut input and per cut output");
  }
  if (static_cast<int>(theta.size()) != f.circuit.num_params) {
    throw std::invalid_argument("fragment_probabilities: parameter count mismatch");
  }
  f.circuit.validate();
  std::uint64_t index = 0;
  for (int q = 0; q < f.num_qubits(); ++q) {
    if (f.qubits[q].cut_in < 0 && f.qubits[q].init_bit) index |= std::uint64_t{1} << q;
  }
  Statevector psi = Statevector::basis_state(f.num_qubits(), index);
  for (std::size_t i = 0; i < prep.size(); ++i) prepare_eigenstate(psi, f.cut_inputs[i], prep[i]);
  for (const Op& op : f.circuit.ops) apply_op(psi, op, theta);
  for (std::size_t i = 0; i < meas.size(); ++i) rotate_to_basis(psi, f.cut_outputs[i], meas[i]);
  return psi.probabilities();
}

double expectation_hamming(const Distribution& d) {
  double e = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) e += d[i] * std::popcount(static_cast<std::uint64_t>(i));
  return e;
}

double total_variation(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

double max_abs_difference(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) throw std::invalid_argument("max_abs_difference: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i] - q[i]));
  return m;
}

Distribution sample_distribution(const Distribution& d, int shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("sample_distribution: shots must be positive");
  std::vector<double> weights(d.values());
  for (auto& w : weights) w = std::max(w, 0.0);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::vector<double> counts(d.size(), 0.0);
  for (int s = 0; s < shots; ++s) counts[pick(rng)] += 1.0;
  for (auto& c : counts) c /= shots;
  return Distribution(d.num_bits(), std::move(counts));
}

}  // namespace qdc
