#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qdc {

using Objective = std::function<double(std::span<const double>)>;

struct OptimizeOptions {
  int max_evals = 0;  // 0 selects 50 * dim
  double ftol = 1e-4;
  double initial_step = 0.1;
  std::uint64_t seed = 0;
  bool wrap_angles = true;
};

struct OptimizeResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  int n_evals = 0;
  bool converged = false;
  std::vector<double> trace;  // best value seen after each evaluation
};

/// Derivative-free Nelder-Mead maximization. With `wrap_angles` every
/// evaluated point is wrapped into [0, 2π). Throws std::runtime_error if the
/// objective returns a non-finite value.
OptimizeResult maximize(const Objective& f, std::vector<double> x0, const OptimizeOptions& options = {});

}  // namespace qdc
