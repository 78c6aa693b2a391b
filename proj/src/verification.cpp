#include "qdc/verification.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qdc/classical_mis.hpp"
#include "qdc/random.hpp"
#include "qdc/simulator.hpp"

namespace qdc {

CutInstance random_cut_instance(int n, int cuts, int depth, std::uint64_t seed) {
  if (n < 2 || n > 14) throw std::invalid_argument("random_cut_instance: n must lie in [2, 14]");
  if (cuts < 0 || cuts > 3) throw std::invalid_argument("random_cut_instance: cuts must lie in [0, 3]");
  if (depth < 1) throw std::invalid_argument("random_cut_instance: depth must be >= 1");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    const double density = 0.2 + 0.3 * unit(rng);
    Graph g = erdos_renyi(n, density, rng());
    Partition part = random_bisection(g, rng());
    const Side first = (rng() & 1U) ? Side::kB : Side::kA;
    const CutClassification cls = classify_nodes(g, part);

    // random feasible state, leaving a random subset of first-block cut nodes
    // at 0 so their mixers can be hot
    std::vector<int> hot;
    for (int v : cls.cut(first))
      if (unit(rng) < 0.5) hot.push_back(v);
    const std::vector<int> inter = inter_graph_neighbors(g, part, hot);
    if (static_cast<int>(inter.size()) != cuts) continue;

    Bitstring init(static_cast<std::size_t>(n));
    std::vector<char> blocked(n, 0);
    for (int v : hot) blocked[v] = 1;
    for (int v = 0; v < n; ++v) {
      if (blocked[v] || unit(rng) > 0.3) continue;
      bool ok = true;
      for (int u : g.neighbors(v)) ok = ok && !init[u];
      if (ok) init.set(v);
    }

    HotColdSplit split;
    split.first_block = first;
    split.hot = hot;
    split.inter_neighbors = inter;
    for (int v : cls.all_cut())
      if (!std::binary_search(hot.begin(), hot.end(), v)) split.cold.push_back(v);
    split.cost = cut_cost(g, part, split.cold);

    std::vector<int> sigma = part.nodes(first);
    for (int v : part.nodes(other(first))) sigma.push_back(v);
    MixerFreezing freezing(n, depth);
    for (int v : split.cold) freezing.freeze(v);
    for (int v : hot) freezing.freeze_from_layer(v, 2);
    AnsatzConventions conv;
    conv.layer_order = (rng() & 1U) ? LayerOrder::kPhaseThenMixer : LayerOrder::kMixerThenPhase;
    ParamCircuit circuit = build_dqva(g, init, depth, sigma, freezing, conv);
    CutCircuit cc = place_cuts(circuit, part, hot, inter);

    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> theta(circuit.num_free());
    for (double& x : theta) x = angle(rng);
    return CutInstance{std::move(g), std::move(part), std::move(split), std::move(circuit), std::move(cc),
                       std::move(theta)};
  }
  throw std::runtime_error("random_cut_instance: no instance with " + std::to_string(cuts) + " cuts on " +
                           std::to_string(n) + " nodes");
}

CuttingTrial run_cutting_trial(const CutInstance& inst) {
  const Distribution exact = simulate(inst.circuit, inst.theta).probabilities();
  const FragmentResults data = evaluate_fragments(inst.cut, inst.theta);
  const Reconstruction r = reconstruct(data, inst.cut);
  CuttingTrial t;
  t.num_qubits = inst.circuit.num_qubits();
  t.num_cuts = r.num_cuts;
  t.depth = inst.circuit.depth();
  t.num_variants = r.num_variants;
  t.num_terms = r.num_terms;
  t.tv = total_variation(r.distribution, exact);
  t.max_abs = max_abs_difference(r.distribution, exact);
  t.pre_clamp_min = r.pre_clamp_min;
  t.pre_clamp_sum = r.pre_clamp_sum;
  t.expectation_error = std::abs(reconstructed_expectation(data, inst.cut) - expectation_hamming(exact));
  return t;
}

}  // namespace qdc
