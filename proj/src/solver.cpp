#include "qdc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "qdc/classical_mis.hpp"
#include "qdc/cutting.hpp"
#include "qdc/optimizer.hpp"
#include "qdc/random.hpp"
#include "qdc/simulator.hpp"

namespace qdc {

void QdcConfig::validate() const {
  if (rounds < 1) throw std::invalid_argument("QdcConfig: rounds must be >= 1");
  if (max_cuts < 0) throw std::invalid_argument("QdcConfig: t must be >= 0");
  if (depth < 1) throw std::invalid_argument("QdcConfig: p must be >= 1");
  if (!(bias_epsilon > 0.0 && bias_epsilon <= 1.0)) {
    throw std::invalid_argument("QdcConfig: bias_epsilon must lie in (0, 1]");
  }
  if (repetitions < 1) throw std::invalid_argument("QdcConfig: repetitions must be >= 1");
  if (max_evals < 0) throw std::invalid_argument("QdcConfig: max_evals must be >= 0");
  if (!(ftol > 0.0)) throw std::invalid_argument("QdcConfig: ftol must be positive");
  if (max_fragment_qubits < 1 || max_fragment_qubits > kMaxSimulatedQubits) {
    throw std::invalid_argument("QdcConfig: fragment qubit cap out of range");
  }
  if (shots < 0) throw std::invalid_argument("QdcConfig: shots must be >= 0");
  if (!(support_threshold >= 0.0)) throw std::invalid_argument("QdcConfig: support threshold must be >= 0");
}

namespace {

// Σ_{j∈N(i) across} deg(j): what node i adds to the cost when cold.
std::int64_t cold_penalty(const Graph& g, const Partition& part, int i) {
  std::int64_t s = 0;
  for (int j : g.neighbors(i))
    if (part.side(j) != part.side(i)) s += g.degree(j);
  return s;
}

std::vector<int> across(const Graph& g, const Partition& part, int i) {
  std::vector<int> out;
  for (int j : g.neighbors(i))
    if (part.side(j) != part.side(i)) out.push_back(j);
  return out;
}

using SplitKey = std::tuple<std::int64_t, std::size_t, std::vector<int>, int>;

SplitKey key_of(const HotColdSplit& s) {
  return {s.cost, s.inter_neighbors.size(), s.hot, s.first_block == Side::kA ? 0 : 1};
}

HotColdSplit finish_split(const Graph& g, const Partition& part, const std::vector<int>& all_cut, Side first,
                          std::vector<int> hot) {
  HotColdSplit s;
  s.first_block = first;
  std::sort(hot.begin(), hot.end());
  s.hot = std::move(hot);
  std::set_difference(all_cut.begin(), all_cut.end(), s.hot.begin(), s.hot.end(), std::back_inserter(s.cold));
  s.inter_neighbors = inter_graph_neighbors(g, part, s.hot);
  s.cost = cut_cost(g, part, s.cold);
  return s;
}

}  // namespace

std::int64_t cut_cost(const Graph& g, const Partition& part, std::span<const int> cold) {
  std::int64_t s = 0;
  for (int i : cold) s += cold_penalty(g, part, i);
  return s;
}

std::vector<int> inter_graph_neighbors(const Graph& g, const Partition& part, std::span<const int> hot) {
  std::vector<int> out;
  for (int i : hot) {
    auto a = across(g, part, i);
    out.insert(out.end(), a.begin(), a.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HotColdSplit select_hot_nodes(const Graph& g, const Partition& part, int t, std::span<const int> ineligible) {
  if (t < 0) throw std::invalid_argument("select_hot_nodes: t must be >= 0");
  const int n = g.num_nodes();
  const CutClassification cls = classify_nodes(g, part);
  const std::vector<int> all_cut = cls.all_cut();
  std::vector<char> blocked(n, 0);
  for (int v : ineligible) {
    if (v < 0 || v >= n) throw std::out_of_range("select_hot_nodes: node out of range");
    blocked[v] = 1;
  }
  const std::int64_t total = cut_cost(g, part, all_cut);

  std::vector<int> candidates[2];
  std::size_t subsets = 0;
  for (Side first : {Side::kA, Side::kB}) {
    auto& c = candidates[static_cast<int>(first)];
    for (int v : cls.cut(first))
      if (!blocked[v]) c.push_back(v);
    if (c.size() >= static_cast<std::size_t>(kHotSearchLog2Cap)) {
      subsets = std::size_t{1} << kHotSearchLog2Cap;
      subsets += 1;
    } else {
      subsets += std::size_t{1} << c.size();
    }
  }
  const bool exhaustive = subsets <= (std::size_t{1} << kHotSearchLog2Cap);

  std::optional<HotColdSplit> best;
  std::optional<SplitKey> best_key;
  auto offer = [&](Side first, std::vector<int> hot) {
    HotColdSplit s = finish_split(g, part, all_cut, first, std::move(hot));
    SplitKey k = key_of(s);
    if (!best_key || k < *best_key) {
      best_key = std::move(k);
      best = std::move(s);
    }
  };

  std::vector<int> stamp(n, -1);
  for (Side first : {Side::kA, Side::kB}) {
    const auto& c = candidates[static_cast<int>(first)];
    std::vector<std::vector<int>> nbrs;
    std::vector<std::int64_t> gain;
    for (int v : c) {
      nbrs.push_back(across(g, part, v));
      gain.push_back(cold_penalty(g, part, v));
    }
    if (exhaustive) {
      // Evaluate the key cheaply and only materialize improvements.
      const std::uint64_t count = std::uint64_t{1} << c.size();
      int epoch = 0;
      for (std::uint64_t mask = 0; mask < count; ++mask, ++epoch) {
        std::int64_t cost = total;
        int inter = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (!((mask >> i) & 1U)) continue;
          cost -= gain[i];
          for (int j : nbrs[i]) {
            if (stamp[j] != epoch) {
              stamp[j] = epoch;
              ++inter;
            }
          }
        }
        if (inter > t) continue;
        if (best_key && std::get<0>(*best_key) < cost) continue;
        std::vector<int> hot;
        for (std::size_t i = 0; i < c.size(); ++i)
          if ((mask >> i) & 1U) hot.push_back(c[i]);
        offer(first, std::move(hot));
      }
      std::fill(stamp.begin(), stamp.end(), -1);
    } else {
      std::vector<int> hot;
      std::vector<char> used(c.size(), 0), in_i(n, 0);
      int inter = 0;
      while (true) {
        int pick = -1;
        double pick_score = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (used[i]) continue;
          int added = 0;
          for (int j : nbrs[i]) added += in_i[j] ? 0 : 1;
          if (inter + added > t) continue;
          const double score = static_cast<double>(gain[i]) / std::max(added, 1);
          if (pick < 0 || score > pick_score) {
            pick = static_cast<int>(i);
            pick_score = score;
          }
        }
        if (pick < 0 || pick_score <= 0.0) break;
        used[pick] = 1;
        hot.push_back(c[pick]);
        for (int j : nbrs[pick]) {
          if (!in_i[j]) {
            in_i[j] = 1;
            ++inter;
          }
        }
      }
      offer(first, std::move(hot));
    }
  }
  return *best;
}

Bitstring warm_start(const Graph& g, WarmStart mode) {
  const int n = g.num_nodes();
  Bitstring b(static_cast<std::size_t>(n));
  if (mode == WarmStart::kAllZeros) return b;
  std::vector<int> order = identity_permutation(n);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return g.degree(a) < g.degree(c); });
  std::vector<char> blocked(n, 0);
  for (int v : order) {
    if (blocked[v]) continue;
    b.set(v);
    blocked[v] = 1;
    for (int u : g.neighbors(v)) blocked[u] = 1;
  }
  return b;
}

namespace {

// Heaviest feasible string whose probability exceeds the threshold; ties go
// to the lexicographically smallest string.
std::optional<Bitstring> best_candidate(const Graph& g, const Distribution& d, double threshold) {
  std::optional<Bitstring> best;
  int best_weight = -1;
  for (std::uint64_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > threshold)) continue;
    const int w = std::popcount(i);
    if (w < best_weight) continue;
    Bitstring b = Bitstring::from_index(i, d.num_bits());
    if (!is_independent_set(g, b)) continue;
    if (w > best_weight || b < *best) {
      best = std::move(b);
      best_weight = w;
    }
  }
  return best;
}

InnerRecord inner_iteration(const Graph& g, const Partition& part, const Bitstring& s, const QdcConfig& cfg,
                            std::uint64_t seed) {
  const int n = g.num_nodes();
  InnerRecord rec;
  rec.split = select_hot_nodes(g, part, cfg.max_cuts, s.support());
  const HotColdSplit& split = rec.split;

  std::vector<int> sigma = part.nodes(split.first_block);
  const auto& second = part.nodes(other(split.first_block));
  sigma.insert(sigma.end(), second.begin(), second.end());

  MixerFreezing freezing(n, cfg.depth);
  for (int v : split.cold) freezing.freeze(v);
  for (int v : split.hot) freezing.freeze_from_layer(v, 2);
  const ParamCircuit circuit = build_dqva(g, s, cfg.depth, sigma, freezing, cfg.conventions);
  const CutCircuit cc = place_cuts(circuit, part, split.hot, split.inter_neighbors);
  rec.num_cuts = cc.num_cuts();
  if (rec.num_cuts != static_cast<int>(split.inter_neighbors.size())) {
    throw std::logic_error("qdc_solve: executed cut count differs from |I(Q^hot)|");
  }
  for (const auto& f : cc.fragments) {
    rec.fragment_qubits.push_back(f.num_qubits());
    if (f.num_qubits() > cfg.max_fragment_qubits) {
      throw std::runtime_error("qdc_solve: fragment needs " + std::to_string(f.num_qubits()) +
                               " qubits, cap is " + std::to_string(cfg.max_fragment_qubits));
    }
  }

  const int dim = circuit.num_free();
  rec.num_free_params = dim;
  Rng rng(derive_seed(seed, 0));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<double> x0(dim);
  for (double& x : x0) x = angle(rng);

  OptimizeOptions opts;
  opts.max_evals = cfg.max_evals;
  opts.ftol = cfg.ftol;
  opts.seed = derive_seed(seed, 1);
  const OptimizeResult opt = maximize(
      [&](std::span<const double> theta) { return reconstructed_expectation(evaluate_fragments(cc, theta), cc); },
      x0, opts);
  rec.optimizer_evals = opt.n_evals;
  rec.optimizer_converged = opt.converged;
  rec.expectation = opt.best_value;
  rec.params = opt.best_params;

  const Reconstruction r = reconstruct(evaluate_fragments(cc, opt.best_params), cc);
  rec.pre_clamp_min = r.pre_clamp_min;
  rec.pre_clamp_sum = r.pre_clamp_sum;
  const Distribution dist =
      cfg.shots > 0 ? sample_distribution(r.distribution, cfg.shots, derive_seed(seed, 2)) : r.distribution;
  auto cand = best_candidate(g, dist, cfg.support_threshold);
  rec.candidate = cand ? *cand : s;
  return rec;
}

}  // namespace

QdcResult qdc_solve(const Graph& g, const QdcConfig& cfg) {
  cfg.validate();
  const int n = g.num_nodes();
  QdcResult out;
  Bitstring s = warm_start(g, cfg.warm_start);
  out.record.warm_start = s;
  Bitstring s_best(static_cast<std::size_t>(n));
  if (n < 2) {
    // nothing to bisect; every node of a 0/1-node graph is independent
    s_best = Bitstring::ones(n);
    for (int r = 1; r <= cfg.rounds; ++r) out.record.trace.push_back(hamming_weight(s_best));
    out.best = s_best;
    return out;
  }

  for (int r = 1; r <= cfg.rounds; ++r) {
    const std::uint64_t round_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
    RoundRecord round;
    round.round = r;
    std::optional<EdgeWeights> weights;
    if (r > 1) weights = biased_edge_weights(g, s, cfg.bias_epsilon);
    round.partition = kernighan_lin_bisect(g, derive_seed(round_seed, 0), weights);
    round.crossing_edges = round.partition.num_crossing();

    for (std::uint64_t it = 1;; ++it) {
      InnerRecord rec = inner_iteration(g, round.partition, s, cfg, derive_seed(round_seed, it));
      if (!is_independent_set(g, rec.candidate)) throw std::logic_error("qdc_solve: infeasible candidate");
      rec.accepted = hamming_weight(rec.candidate) > hamming_weight(s);
      const bool accepted = rec.accepted;
      if (accepted) s = rec.candidate;
      round.iterations.push_back(std::move(rec));
      if (!accepted) break;
    }
    if (hamming_weight(s) > hamming_weight(s_best)) s_best = s;
    round.state = s;
    round.best = s_best;
    out.record.trace.push_back(hamming_weight(s_best));
    out.record.rounds.push_back(std::move(round));
  }
  out.best = s_best;
  return out;
}

RepeatedResult qdc_best_of(const Graph& g, const QdcConfig& cfg) {
  cfg.validate();
  RepeatedResult out;
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    QdcConfig c = cfg;
    c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(rep));
    out.runs.push_back(qdc_solve(g, c));
    if (hamming_weight(out.runs.back().best) > hamming_weight(out.runs[out.best_index].best)) {
      out.best_index = out.runs.size() - 1;
    }
  }
  return out;
}

}  // namespace qdc
