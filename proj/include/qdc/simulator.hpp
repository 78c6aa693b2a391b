#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qdc/ansatz.hpp"
#include "qdc/bitstring.hpp"
#include "qdc/circuit.hpp"
#include "qdc/fragment.hpp"

namespace qdc {

using Amplitude = std::complex<double>;

/// Probabilities over n-bit outcomes, indexed with qubit 0 as the least
/// significant bit.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(int num_bits);
  Distribution(int num_bits, std::vector<double> values);

  int num_bits() const { return num_bits_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::uint64_t index) const { return values_[index]; }
  double& operator[](std::uint64_t index) { return values_[index]; }
  double probability(const Bitstring& b) const { return values_[b.to_index()]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double total() const;

  /// Largest k entries, ties by ascending index.
  std::vector<std::pair<Bitstring, double>> top_k(std::size_t k) const;

 private:
  int num_bits_ = 0;
  std::vector<double> values_;
};

class Statevector {
 public:
  Statevector() = default;
  /// |0...0> on n qubits.
  explicit Statevector(int num_qubits);
  static Statevector basis_state(int num_qubits, std::uint64_t index);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  Amplitude operator[](std::uint64_t index) const { return amps_[index]; }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  double norm_squared() const;
  Distribution probabilities() const;

 private:
  int n_ = 0;
  std::vector<Amplitude> amps_;
};

inline constexpr int kMaxSimulatedQubits = 30;

/// exp(iαX) on `target` restricted to basis states whose `controls` bits are
/// all zero. Only those amplitude pairs are touched.
void apply_partial_mixer(Statevector& psi, int target, std::uint64_t controls, double alpha);
/// diag(1, exp(-i*angle)) on `target`.
void apply_phase(Statevector& psi, int target, double angle);
/// Row-major 2x2 matrix {m00, m01, m10, m11} on `target`.
void apply_single_qubit(Statevector& psi, int target, const std::array<Amplitude, 4>& m);
void apply_op(Statevector& psi, const Op& op, std::span<const double> theta);

/// Rotates qubit q so that a Z measurement reads out the given Pauli basis
/// (outcome 0 for the +1 eigenstate).
void rotate_to_basis(Statevector& psi, int q, PauliBasis basis);
/// Maps qubit q from |0> to the given eigenstate.
void prepare_eigenstate(Statevector& psi, int q, PrepState state);

/// Prepares |init> and applies the ops in order. Throws on missing
/// parameters or oversized circuits.
Statevector simulate(const OpCircuit& circuit, std::span<const double> theta, const Bitstring& init);
Statevector simulate(const ParamCircuit& circuit, std::span<const double> theta);

/// Exact joint distribution over the fragment's local qubits, with cut inputs
/// prepared per `prep` and cut outputs read in the `meas` bases.
Distribution fragment_probabilities(const Fragment& f, std::span<const double> theta,
                                    std::span<const PrepState> prep, std::span<const PauliBasis> meas);

double expectation_hamming(const Distribution& d);
double total_variation(const Distribution& p, const Distribution& q);
double max_abs_difference(const Distribution& p, const Distribution& q);

/// Multinomial sampling of `shots` outcomes, returned as empirical frequencies.
Distribution sample_distribution(const Distribution& d, int shots, std::uint64_t seed);

}  // namespace qdc
