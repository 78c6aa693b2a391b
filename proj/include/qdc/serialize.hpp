#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "qdc/bitstring.hpp"
#include "qdc/classical_mis.hpp"
#include "qdc/cutting.hpp"
#include "qdc/graph.hpp"
#include "qdc/simulator.hpp"
#include "qdc/solver.hpp"

namespace qdc {

using Json = nlohmann::json;

/// "AABB..." with node 0 first.
std::string sides_string(const Partition& part);

Json to_json(const HotColdSplit& split);
Json to_json(const InnerRecord& rec);
Json to_json(const RoundRecord& rec);
Json to_json(const RunRecord& rec);
Json to_json(const DivideAndConquerResult& res);

/// {n_cuts, n_variants, n_terms, pre_clamp_min, pre_clamp_sum[, tv_vs_uncut]}
Json reconstruction_diagnostics(const Reconstruction& r, std::optional<double> tv_vs_uncut = std::nullopt);

/// [{bitstring, probability}, ...] for the k most likely outcomes.
Json top_k_json(const Distribution& d, std::size_t k);

/// {bitstring, weight, feasible}
Json solution_json(const Graph& g, const Bitstring& b);

}  // namespace qdc
