#include "qdc/serialize.hpp"

namespace qdc {

std::string sides_string(const Partition& part) {
  std::string s;
  for (Side side : part.sides()) s += side_name(side);
  return s;
}

Json to_json(const HotColdSplit& split) {
  return Json{{"hot", split.hot},
              {"cold", split.cold},
              {"inter_neighbors", split.inter_neighbors},
              {"block_order", split.first_block == Side::kA ? "AB" : "BA"},
              {"cost", split.cost}};
}

Json to_json(const InnerRecord& rec) {
  return Json{{"split", to_json(rec.split)},
              {"n_cuts", rec.num_cuts},
              {"fragment_qubits", rec.fragment_qubits},
              {"n_free_params", rec.num_free_params},
              {"optimizer_evals", rec.optimizer_evals},
              {"optimizer_converged", rec.optimizer_converged},
              {"expectation", rec.expectation},
              {"params", rec.params},
              {"pre_clamp_min", rec.pre_clamp_min},
              {"pre_clamp_sum", rec.pre_clamp_sum},
              {"candidate", rec.candidate.to_string()},
              {"candidate_weight", hamming_weight(rec.candidate)},
              {"accepted", rec.accepted}};
}

Json to_json(const RoundRecord& rec) {
  Json iterations = Json::array();
  for (const auto& it : rec.iterations) iterations.push_back(to_json(it));
  Json crossing = Json::array();
  for (const auto& e : rec.partition.crossing_edges()) crossing.push_back(Json::array({e.first, e.second}));
  return Json{{"round", rec.round},
              {"sides", sides_string(rec.partition)},
              {"crossing_edges", crossing},
              {"iterations", iterations},
              {"state", rec.state.to_string()},
              {"weight", hamming_weight(rec.state)},
              {"best", rec.best.to_string()},
              {"best_weight", hamming_weight(rec.best)}};
}

Json to_json(const RunRecord& rec) {
  Json rounds = Json::array();
  for (const auto& r : rec.rounds) rounds.push_back(to_json(r));
  return Json{{"warm_start", rec.warm_start.to_string()}, {"rounds", rounds}, {"trace", rec.trace}};
}

Json to_json(const DivideAndConquerResult& res) {
  return Json{{"trace", res.trace}, {"crossing_edges", res.crossing_edges}};
}

Json reconstruction_diagnostics(const Reconstruction& r, std::optional<double> tv_vs_uncut) {
  Json j{{"n_cuts", r.num_cuts},
         {"n_variants", r.num_variants},
         {"n_terms", r.num_terms},
         {"pre_clamp_min", r.pre_clamp_min},
         {"pre_clamp_sum", r.pre_clamp_sum}};
  if (tv_vs_uncut) j["tv_vs_uncut"] = *tv_vs_uncut;
  return j;
}

Json top_k_json(const Distribution& d, std::size_t k) {
  Json out = Json::array();
  for (const auto& [b, p] : d.top_k(k)) out.push_back({{"bitstring", b.to_string()}, {"probability", p}});
  return out;
}

Json solution_json(const Graph& g, const Bitstring& b) {
  return Json{{"bitstring", b.to_string()}, {"weight", hamming_weight(b)}, {"feasible", is_independent_set(g, b)}};
}

}  // namespace qdc
