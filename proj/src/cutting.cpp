#include "qdc/cutting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdc {

std::size_t Fragment::num_variants() const {
  std::size_t v = 1;
  for (std::size_t i = 0; i < cut_outputs.size(); ++i) v *= 3;
  for (std::size_t i = 0; i < cut_inputs.size(); ++i) v *= 6;
  return v;
}

std::size_t Fragment::variant_index(const std::vector<PauliBasis>& meas, const std::vector<PrepState>& prep) const {
  if (meas.size() != cut_outputs.size() || prep.size() != cut_inputs.size()) {
    throw std::invalid_argument("Fragment::variant_index: label count mismatch");
  }
  std::size_t index = 0, scale = 1;
  for (auto m : meas) {
    index += scale * static_cast<std::size_t>(m);
    scale *= 3;
  }
  for (auto p : prep) {
    index += scale * static_cast<std::size_t>(p);
    scale *= 6;
  }
  return index;
}

void Fragment::decode_variant(std::size_t index, std::vector<PauliBasis>& meas, std::vector<PrepState>& prep) const {
  meas.resize(cut_outputs.size());
  prep.resize(cut_inputs.size());
  for (auto& m : meas) {
    m = static_cast<PauliBasis>(index % 3);
    index /= 3;
  }
  for (auto& p : prep) {
    p = static_cast<PrepState>(index % 6);
    index /= 6;
  }
}

double gamma_coeff(int b, int b_prime) {
  if ((b != 0 && b != 1) || (b_prime != 0 && b_prime != 1)) {
    throw std::invalid_argument("gamma_coeff: bits must be 0 or 1");
  }
  return (b == b_prime ? 2.0 : 0.0) - 2.0 / 3.0;
}

std::size_t reconstruction_terms(int cuts) {
  std::size_t t = 1;
  for (int i = 0; i < cuts; ++i) t *= 12;
  return t;
}

namespace {

bool is_diagonal_single(const Op& op) {
  return op.controls == 0 && (op.kind == OpKind::kPhase || op.kind == OpKind::kS || op.kind == OpKind::kSdg);
}

}  // namespace

CutCircuit cut_circuit(const OpCircuit& circuit, const Bitstring& init, std::span<const int> op_fragment,
                       std::span<const int> home) {
  const int n = circuit.num_qubits;
  circuit.validate();
  if (op_fragment.size() != circuit.ops.size() || static_cast<int>(home.size()) != n ||
      static_cast<int>(init.size()) != n) {
    throw std::invalid_argument("cut_circuit: assignment sizes do not match the circuit");
  }
  for (int f : op_fragment)
    if (f != 0 && f != 1) throw std::invalid_argument("cut_circuit: fragments must be 0 or 1");
  for (int f : home)
    if (f != 0 && f != 1) throw std::invalid_argument("cut_circuit: fragments must be 0 or 1");

  // Leading diagonal ops follow the first real op on their wire.
  std::vector<int> effective(op_fragment.begin(), op_fragment.end());
  {
    std::vector<std::vector<std::size_t>> leading(n);
    std::vector<char> started(n, 0);
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
      const Op& op = circuit.ops[i];
      if (is_diagonal_single(op) && !started[op.target]) {
        leading[op.target].push_back(i);
        continue;
      }
      for (int q = 0; q < n; ++q) {
        if (!op.touches(q) || started[q]) continue;
        started[q] = 1;
        for (std::size_t j : leading[q]) effective[j] = op_fragment[i];
        leading[q].clear();
      }
    }
    for (int q = 0; q < n; ++q)
      for (std::size_t j : leading[q]) effective[j] = home[q];
  }

  CutCircuit cc;
  cc.num_qubits = n;
  cc.num_params = circuit.num_params;
  cc.fragments.resize(2);
  for (auto& f : cc.fragments) f.circuit.num_params = circuit.num_params;

  std::vector<int> owner(n, -1), local(n, -1), last_op(n, -1);
  auto allocate = [&](int f, int q, int cut_in) {
    Fragment& frag = cc.fragments[f];
    FragmentQubit fq;
    fq.origin = q;
    fq.init_bit = cut_in < 0 && init[q];
    fq.cut_in = cut_in;
    frag.qubits.push_back(fq);
    int id = static_cast<int>(frag.qubits.size()) - 1;
    if (cut_in >= 0) frag.cut_inputs.push_back(id);
    return id;
  };
  auto move_wire = [&](int q, int f) {
    if (owner[q] == -1) {
      local[q] = allocate(f, q, -1);
      owner[q] = f;
    } else if (owner[q] != f) {
      const int cut_id = static_cast<int>(cc.cuts.size());
      cc.cuts.push_back(CutPoint{q, last_op[q], owner[q], f});
      Fragment& from = cc.fragments[owner[q]];
      from.qubits[local[q]].cut_out = cut_id;
      from.cut_outputs.push_back(local[q]);
      local[q] = allocate(f, q, cut_id);
      owner[q] = f;
    }
  };

  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const Op& op = circuit.ops[i];
    const int f = effective[i];
    Op mapped = op;
    mapped.controls = 0;
    for (int q = 0; q < n; ++q) {
      if (!op.touches(q)) continue;
      move_wire(q, f);
      last_op[q] = static_cast<int>(i);
      if (q == op.target) {
        mapped.target = local[q];
      } else {
        mapped.controls |= std::uint64_t{1} << local[q];
      }
    }
    cc.fragments[f].circuit.ops.push_back(mapped);
  }
  for (int q = 0; q < n; ++q) move_wire(q, home[q]);

  for (auto& f : cc.fragments) {
    f.circuit.num_qubits = f.num_qubits();
    if (f.num_qubits() > kMaxSimulatedQubits) throw std::runtime_error("cut_circuit: fragment too large");
  }
  return cc;
}

CutCircuit place_cuts(const ParamCircuit& circuit, const Partition& part, std::span<const int> hot,
                      std::span<const int> inter_neighbors) {
  const int n = circuit.num_qubits();
  if (static_cast<int>(part.sides().size()) != n) throw std::invalid_argument("place_cuts: partition size mismatch");
  if (n == 0) throw std::invalid_argument("place_cuts: empty circuit");
  const auto& sigma = circuit.permutation();
  const Side first = hot.empty() ? part.side(sigma.front()) : part.side(hot.front());
  for (int h : hot) {
    if (part.side(h) != first) throw std::invalid_argument("place_cuts: hot nodes must lie in the first block");
  }
  {
    // sigma must list every first-block node before any second-block node
    bool seen_second = false;
    for (int v : sigma) {
      if (part.side(v) != first) {
        seen_second = true;
      } else if (seen_second) {
        throw std::invalid_argument("place_cuts: mixer order is not grouped by subgraph");
      }
    }
  }

  const OpCircuit lowered = circuit.lower();
  std::vector<int> op_fragment(lowered.ops.size());
  for (std::size_t i = 0; i < lowered.ops.size(); ++i) {
    op_fragment[i] = part.side(lowered.ops[i].target) == first ? 0 : 1;
  }
  std::vector<int> home(n);
  for (int q = 0; q < n; ++q) home[q] = part.side(q) == first ? 0 : 1;

  CutCircuit cc = cut_circuit(lowered, circuit.initial_state(), op_fragment, home);

  std::vector<int> cut_qubits;
  for (const auto& c : cc.cuts) cut_qubits.push_back(c.qubit);
  std::sort(cut_qubits.begin(), cut_qubits.end());
  std::vector<int> expected(inter_neighbors.begin(), inter_neighbors.end());
  std::sort(expected.begin(), expected.end());
  if (cut_qubits != expected) {
    throw std::runtime_error("place_cuts: circuit is not separable with " + std::to_string(expected.size()) +
                             " cuts (found " + std::to_string(cut_qubits.size()) + ")");
  }
  return cc;
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Amplitude of |bit> in the prepared eigenstate.
Amplitude prep_coefficient(PrepState s, int bit) {
  switch (s) {
    case PrepState::kZ0: return bit == 0 ? 1.0 : 0.0;
    case PrepState::kZ1: return bit == 0 ? 0.0 : 1.0;
    case PrepState::kX0: return kInvSqrt2;
    case PrepState::kX1: return bit == 0 ? kInvSqrt2 : -kInvSqrt2;
    case PrepState::kY0: return bit == 0 ? Amplitude{kInvSqrt2, 0.0} : Amplitude{0.0, kInvSqrt2};
    case PrepState::kY1: return bit == 0 ? Amplitude{kInvSqrt2, 0.0} : Amplitude{0.0, -kInvSqrt2};
  }
  return 0.0;
}

}  // namespace

FragmentData evaluate_fragment(const Fragment& f, std::span<const double> theta) {
  const std::size_t k_in = f.cut_inputs.size();
  const std::size_t k_out = f.cut_outputs.size();
  const int L = f.num_qubits();

  std::uint64_t base = 0;
  for (int q = 0; q < L; ++q)
    if (f.qubits[q].cut_in < 0 && f.qubits[q].init_bit) base |= std::uint64_t{1} << q;

  std::vector<Statevector> basis_runs;
  basis_runs.reserve(std::size_t{1} << k_in);
  for (std::uint64_t beta = 0; beta < (std::uint64_t{1} << k_in); ++beta) {
    std::uint64_t idx = base;
    for (std::size_t i = 0; i < k_in; ++i)
      if ((beta >> i) & 1U) idx |= std::uint64_t{1} << f.cut_inputs[i];
    basis_runs.push_back(simulate(f.circuit, theta, Bitstring::from_index(idx, L)));
  }

  std::size_t meas_count = 1, prep_count = 1;
  for (std::size_t i = 0; i < k_out; ++i) meas_count *= 3;
  for (std::size_t i = 0; i < k_in; ++i) prep_count *= 6;

  FragmentData data;
  data.variants.resize(meas_count * prep_count);
  std::vector<PauliBasis> meas;
  std::vector<PrepState> prep;
  Statevector mixed(L);
  for (std::size_t pi = 0; pi < prep_count; ++pi) {
    const Statevector* psi = &basis_runs.front();
    if (k_in > 0) {
      f.decode_variant(pi * meas_count, meas, prep);
      auto out = mixed.amplitudes();
      std::fill(out.begin(), out.end(), Amplitude{0.0, 0.0});
      for (std::uint64_t beta = 0; beta < basis_runs.size(); ++beta) {
        Amplitude coef = 1.0;
        for (std::size_t i = 0; i < k_in; ++i) coef *= prep_coefficient(prep[i], static_cast<int>((beta >> i) & 1U));
        if (coef == Amplitude{0.0, 0.0}) continue;
        auto in = basis_runs[beta].amplitudes();
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += coef * in[j];
      }
      psi = &mixed;
    }
    for (std::size_t mi = 0; mi < meas_count; ++mi) {
      const std::size_t variant = pi * meas_count + mi;
      if (k_out == 0) {
        data.variants[variant] = psi->probabilities();
        continue;
      }
      f.decode_variant(variant, meas, prep);
      Statevector rotated = *psi;
      for (std::size_t i = 0; i < k_out; ++i) rotate_to_basis(rotated, f.cut_outputs[i], meas[i]);
      data.variants[variant] = rotated.probabilities();
    }
  }
  return data;
}

FragmentResults evaluate_fragments(const CutCircuit& cc, std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != cc.num_params) {
    throw std::invalid_argument("evaluate_fragments: expected " + std::to_string(cc.num_params) + " parameters");
  }
  FragmentResults out;
  out.reserve(cc.fragments.size());
  for (const auto& f : cc.fragments) out.push_back(evaluate_fragment(f, theta));
  return out;
}

namespace {

// Fragment data reshaped to [leg index][final bits]; one leg per cut with
// value 2*basis + bit.
struct LegTensor {
  std::size_t legs = 1;
  std::size_t width = 1;
  std::vector<std::uint64_t> scatter;  // final-bit index -> original-qubit mask
  std::vector<double> data;

  const double* row(std::size_t k) const { return data.data() + k * width; }
  double* row(std::size_t k) { return data.data() + k * width; }
};

LegTensor to_leg_tensor(const Fragment& f, const FragmentData& d, int num_cuts) {
  const int L = f.num_qubits();
  if (d.variants.size() != f.num_variants()) {
    throw std::invalid_argument("reconstruct: fragment has " + std::to_string(d.variants.size()) +
                                " variant distributions, expected " + std::to_string(f.num_variants()));
  }
  std::vector<std::size_t> pow6(num_cuts + 1, 1);
  for (int c = 1; c <= num_cuts; ++c) pow6[c] = pow6[c - 1] * 6;

  std::vector<int> finals;
  std::vector<int> cut_of_local(L, -1);
  for (int q = 0; q < L; ++q) {
    if (f.qubits[q].is_final()) finals.push_back(q);
    if (f.qubits[q].cut_out >= 0) cut_of_local[q] = f.qubits[q].cut_out;
  }
  std::vector<char> has_leg(num_cuts, 0);
  for (const auto& fq : f.qubits) {
    for (int c : {fq.cut_in, fq.cut_out}) {
      if (c >= num_cuts) throw std::invalid_argument("reconstruct: cut id out of range");
      if (c >= 0) has_leg[c] = 1;
    }
  }
  if (std::find(has_leg.begin(), has_leg.end(), 0) != has_leg.end()) {
    throw std::invalid_argument("reconstruct: every cut must join the two fragments");
  }

  LegTensor t;
  t.legs = pow6[num_cuts];
  t.width = std::size_t{1} << finals.size();
  t.scatter.resize(t.width);
  for (std::size_t x = 0; x < t.width; ++x) {
    std::uint64_t m = 0;
    for (std::size_t b = 0; b < finals.size(); ++b)
      if ((x >> b) & 1U) m |= std::uint64_t{1} << f.qubits[finals[b]].origin;
    t.scatter[x] = m;
  }
  t.data.assign(t.legs * t.width, 0.0);

  // Per local outcome: final-bit index and the bit part of the output legs.
  const std::size_t outcomes = std::size_t{1} << L;
  std::vector<std::uint32_t> final_index(outcomes);
  std::vector<std::size_t> out_bits(outcomes);
  for (std::size_t i = 0; i < outcomes; ++i) {
    std::uint32_t x = 0;
    for (std::size_t b = 0; b < finals.size(); ++b)
      if ((i >> finals[b]) & 1U) x |= 1U << b;
    final_index[i] = x;
    std::size_t legs = 0;
    for (int q = 0; q < L; ++q)
      if (cut_of_local[q] >= 0 && ((i >> q) & 1U)) legs += pow6[cut_of_local[q]];
    out_bits[i] = legs;
  }

  std::vector<PauliBasis> meas;
  std::vector<PrepState> prep;
  for (std::size_t v = 0; v < d.variants.size(); ++v) {
    const Distribution& dist = d.variants[v];
    if (dist.num_bits() != L) throw std::invalid_argument("reconstruct: inconsistent fragment bit count");
    f.decode_variant(v, meas, prep);
    std::size_t base = 0;
    for (std::size_t i = 0; i < meas.size(); ++i) {
      base += pow6[f.qubits[f.cut_outputs[i]].cut_out] * (2 * static_cast<std::size_t>(meas[i]));
    }
    for (std::size_t i = 0; i < prep.size(); ++i) {
      base += pow6[f.qubits[f.cut_inputs[i]].cut_in] * static_cast<std::size_t>(prep[i]);
    }
    for (std::size_t i = 0; i < outcomes; ++i) {
      const double p = dist[i];
      if (p == 0.0) continue;
      t.data[(base + out_bits[i]) * t.width + final_index[i]] = p;
    }
  }
  return t;
}

// Folds the per-cut quasi-probability weights into the second fragment:
// out[(α,b)...] = Σ_{b'} Π_c ½γ_{b_c b'_c} in[(α,b')...].
LegTensor absorb_cut_weights(const LegTensor& in, int num_cuts, std::size_t& terms) {
  LegTensor out = in;
  std::fill(out.data.begin(), out.data.end(), 0.0);
  std::size_t bases = 1, bit_patterns = std::size_t{1} << num_cuts;
  for (int c = 0; c < num_cuts; ++c) bases *= 3;
  terms = 0;
  for (std::size_t a = 0; a < bases; ++a) {
    std::size_t alpha_part = 0;
    {
      std::size_t rem = a, scale = 1;
      for (int c = 0; c < num_cuts; ++c) {
        alpha_part += scale * 2 * (rem % 3);
        rem /= 3;
        scale *= 6;
      }
    }
    for (std::size_t b = 0; b < bit_patterns; ++b) {
      std::size_t dst = alpha_part, scale = 1;
      for (int c = 0; c < num_cuts; ++c, scale *= 6) dst += scale * ((b >> c) & 1U);
      double* out_row = out.row(dst);
      for (std::size_t bp = 0; bp < bit_patterns; ++bp) {
        std::size_t src = alpha_part;
        double coef = 1.0;
        scale = 1;
        for (int c = 0; c < num_cuts; ++c, scale *= 6) {
          const int bit_dst = static_cast<int>((b >> c) & 1U);
          const int bit_src = static_cast<int>((bp >> c) & 1U);
          src += scale * bit_src;
          coef *= 0.5 * gamma_coeff(bit_dst, bit_src);
        }
        ++terms;
        const double* in_row = in.row(src);
        for (std::size_t x = 0; x < in.width; ++x) out_row[x] += coef * in_row[x];
      }
    }
  }
  return out;
}

struct Contraction {
  LegTensor first;
  LegTensor second;  // cut weights already absorbed
  std::size_t terms = 0;
  std::size_t variants = 0;
};

Contraction prepare(const FragmentResults& data, const CutCircuit& cc) {
  if (cc.fragments.size() != 2 || data.size() != 2) {
    throw std::invalid_argument("reconstruct: expected data for exactly two fragments");
  }
  const int cuts = cc.num_cuts();
  Contraction c;
  c.first = to_leg_tensor(cc.fragments[0], data[0], cuts);
  c.second = absorb_cut_weights(to_leg_tensor(cc.fragments[1], data[1], cuts), cuts, c.terms);
  c.variants = data[0].variants.size() + data[1].variants.size();
  return c;
}

}  // namespace

Reconstruction reconstruct(const FragmentResults& data, const CutCircuit& cc) {
  Contraction c = prepare(data, cc);
  std::vector<double> out(std::size_t{1} << cc.num_qubits, 0.0);
  for (std::size_t k = 0; k < c.first.legs; ++k) {
    const double* row0 = c.first.row(k);
    const double* row1 = c.second.row(k);
    if (std::all_of(row0, row0 + c.first.width, [](double v) { return v == 0.0; })) continue;
    for (std::size_t x1 = 0; x1 < c.second.width; ++x1) {
      const double w = row1[x1];
      if (w == 0.0) continue;
      const std::uint64_t high = c.second.scatter[x1];
      for (std::size_t x0 = 0; x0 < c.first.width; ++x0) out[high | c.first.scatter[x0]] += w * row0[x0];
    }
  }

  Reconstruction r;
  r.num_cuts = cc.num_cuts();
  r.num_variants = c.variants;
  r.num_terms = c.terms;
  r.pre_clamp_min = *std::min_element(out.begin(), out.end());
  double sum = 0.0;
  for (double v : out) sum += v;
  r.pre_clamp_sum = sum;
  double clamped = 0.0;
  for (double& v : out) {
    if (v < 0.0) v = 0.0;
    clamped += v;
  }
  if (clamped > 0.0)
    for (double& v : out) v /= clamped;
  r.distribution = Distribution(cc.num_qubits, std::move(out));
  return r;
}

double reconstructed_expectation(const FragmentResults& data, const CutCircuit& cc) {
  Contraction c = prepare(data, cc);
  auto weight = [](std::uint64_t m) { return static_cast<double>(std::popcount(m)); };
  double e = 0.0;
  for (std::size_t k = 0; k < c.first.legs; ++k) {
    const double* row0 = c.first.row(k);
    const double* row1 = c.second.row(k);
    double s0 = 0.0, h0 = 0.0, s1 = 0.0, h1 = 0.0;
    for (std::size_t x = 0; x < c.first.width; ++x) {
      s0 += row0[x];
      h0 += row0[x] * weight(c.first.scatter[x]);
    }
    if (s0 == 0.0 && h0 == 0.0) continue;
    for (std::size_t x = 0; x < c.second.width; ++x) {
      s1 += row1[x];
      h1 += row1[x] * weight(c.second.scatter[x]);
    }
    e += h0 * s1 + s0 * h1;
  }
  return e;
}

}  // namespace qdc
