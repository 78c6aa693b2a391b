#include "qdc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qdc/ansatz.hpp"
#include "qdc/random.hpp"

namespace qdc {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

class Evaluator {
 public:
  Evaluator(const Objective& f, bool wrap, int budget) : f_(f), wrap_(wrap), budget_(budget) {}

  double operator()(const std::vector<double>& x) {
    std::vector<double> p = point(x);
    const double v = f_(p);
    ++evals_;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "maximize: objective returned " << v << " at [";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
      os << ']';
      throw std::runtime_error(os.str());
    }
    if (trace_.empty() || v > best_value_) {
      best_value_ = v;
      best_ = std::move(p);
    }
    trace_.push_back(best_value_);
    return v;
  }

  std::vector<double> point(const std::vector<double>& x) const {
    std::vector<double> p = x;
    if (wrap_)
      for (double& a : p) a = wrap_angle(a);
    return p;
  }

  bool exhausted() const { return evals_ >= budget_; }
  int evals() const { return evals_; }
  const std::vector<double>& best() const { return best_; }
  double best_value() const { return best_value_; }
  std::vector<double>& trace() { return trace_; }

 private:
  const Objective& f_;
  bool wrap_;
  int budget_;
  int evals_ = 0;
  std::vector<double> best_;
  double best_value_ = 0.0;
  std::vector<double> trace_;
};

}  // namespace

OptimizeResult maximize(const Objective& f, std::vector<double> x0, const OptimizeOptions& options) {
  const int dim = static_cast<int>(x0.size());
  const int budget = options.max_evals > 0 ? options.max_evals : 50 * std::max(dim, 1);
  if (options.max_evals < 0) throw std::invalid_argument("maximize: max_evals must be non-negative");
  if (budget < dim + 2) throw std::invalid_argument("maximize: max_evals must be at least dim + 2");
  if (!(options.ftol > 0.0)) throw std::invalid_argument("maximize: ftol must be positive");

  Evaluator eval(f, options.wrap_angles, budget);
  OptimizeResult result;
  if (dim == 0) {
    result.best_value = eval(x0);
    result.best_params = eval.best();
    result.n_evals = 1;
    result.converged = true;
    result.trace = eval.trace();
    return result;
  }

  Rng rng(options.seed);
  std::vector<std::vector<double>> simplex(dim + 1, x0);
  for (int i = 0; i < dim; ++i) {
    const double sign = (rng() & 1U) ? -1.0 : 1.0;
    simplex[i + 1][i] += sign * options.initial_step;
  }
  std::vector<double> values(dim + 1);
  for (int i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<int> order(dim + 1);
  bool converged = false;
  while (true) {
    // best first
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return values[a] > values[b]; });
    {
      std::vector<std::vector<double>> s(dim + 1);
      std::vector<double> v(dim + 1);
      for (int i = 0; i <= dim; ++i) {
        s[i] = simplex[order[i]];
        v[i] = values[order[i]];
      }
      simplex.swap(s);
      values.swap(v);
    }
    if (values.front() - values.back() < options.ftol) {
      converged = true;
      break;
    }
    if (eval.exhausted()) break;

    std::vector<double> centroid(dim, 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / dim;
    auto along = [&](double t) {
      std::vector<double> p(dim);
      for (int j = 0; j < dim; ++j) p[j] = centroid[j] + t * (simplex[dim][j] - centroid[j]);
      return p;
    };

    std::vector<double> xr = along(-kReflect);
    const double fr = eval(xr);
    if (fr > values[0]) {
      if (eval.exhausted()) {
        simplex[dim] = xr;
        values[dim] = fr;
        continue;
      }
      std::vector<double> xe = along(-kReflect * kExpand);
      const double fe = eval(xe);
      if (fe > fr) {
        simplex[dim] = xe;
        values[dim] = fe;
      } else {
        simplex[dim] = xr;
        values[dim] = fr;
      }
      continue;
    }
    if (fr > values[dim - 1]) {
      simplex[dim] = xr;
      values[dim] = fr;
      continue;
    }
    if (eval.exhausted()) continue;
    const bool outside = fr > values[dim];
    std::vector<double> xc = along(outside ? -kReflect * kContract : kContract);
    const double fc = eval(xc);
    if (fc > std::max(fr, values[dim]) || (!outside && fc > values[dim])) {
      simplex[dim] = xc;
      values[dim] = fc;
      continue;
    }
    if (outside && fr > values[dim]) {
      simplex[dim] = xr;
      values[dim] = fr;
    }
    for (int i = 1; i <= dim && !eval.exhausted(); ++i) {
      for (int j = 0; j < dim; ++j) simplex[i][j] = simplex[0][j] + kShrink * (simplex[i][j] - simplex[0][j]);
      values[i] = eval(simplex[i]);
    }
  }

  result.best_params = eval.best();
  result.best_value = eval.best_value();
  result.n_evals = eval.evals();
  result.converged = converged;
  result.trace = std::move(eval.trace());
  return result;
}

}  // namespace qdc
