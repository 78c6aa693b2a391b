// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "qdc/classical_mis.hpp"
#include "qdc/cutting.hpp"
#include "qdc/experiment.hpp"
#include "qdc/random.hpp"
#include "qdc/simulator.hpp"
#include "qdc/solver.hpp"
#include "qdc/verification.hpp"

using namespace qdc;
namespace fs = std::filesystem;

namespace {

constexpr double kCutTvTol = 1e-9;
constexpr double kInfeasibleMassTol = 1e-10;
constexpr double kIdentityTol = 1e-12;
constexpr double kFig5Seconds = 3600;
constexpr double kFig2Seconds = 300;
constexpr double kCutSeconds = 300;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome cutting_oracle() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  double worst = 0.0;
  int count = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 6 + static_cast<int>(rng() % 7);
    const int depth = 1 + static_cast<int>(rng() % 2);
    const int cuts = 1 + i % 3;
    const auto inst = random_cut_instance(n, cuts, depth, rng());
    const auto t = run_cutting_trial(inst);
    if (t.num_cuts != cuts) return {false, "instance " + std::to_string(i) + " has the wrong cut count"};
    worst = std::max(worst, t.tv);
    ++count;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= kCutTvTol && secs <= kCutSeconds,
          std::to_string(count) + " instances, max TV " + fmt("%.2e", worst) + " (tol 1e-9), " + fmt("%.1f", secs) +
              " s (limit 300 s)"};
}

Outcome feasibility() {
  Rng rng(202);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const Graph g = erdos_renyi(n, 0.15 + 0.5 * (rng() % 100) / 100.0, rng());
    Bitstring init(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      if (rng() % 3) continue;
      init.set(v);
      if (!is_independent_set(g, init)) init.set(v, false);
    }
    std::vector<int> sigma = identity_permutation(n);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    const int depth = 1 + static_cast<int>(rng() % 3);
    const auto c = build_dqva(g, init, depth, sigma);
    std::vector<double> theta(c.num_free());
    for (double& x : theta) x = angle(rng);
    const auto p = simulate(c, theta).probabilities();
    double bad = 0.0;
    for (std::uint64_t x = 0; x < p.size(); ++x)
      if (!oracle::independent(g, x)) bad += p[x];
    worst = std::max(worst, bad);
  }
  return {worst <= kInfeasibleMassTol, "100 instances, max infeasible mass " + fmt("%.2e", worst) + " (tol 1e-10)"};
}

Outcome cut_count_identity() {
  Rng rng(303);
  int mismatches = 0, total_cuts = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 6 + static_cast<int>(rng() % 9);
    const Graph g = (i % 2) ? random_regular(n + n % 2, 3, rng()) : erdos_renyi(n, 0.3, rng());
    const Partition part = (i % 3) ? kernighan_lin_bisect(g, rng()) : random_bisection(g, rng());
    const int t = static_cast<int>(rng() % 4);
    const int nn = g.num_nodes();
    Bitstring s(static_cast<std::size_t>(nn));
    for (int v = 0; v < nn; ++v) {
      if (rng() % 4) continue;
      s.set(v);
      if (!is_independent_set(g, s)) s.set(v, false);
    }
    const auto split = select_hot_nodes(g, part, t, s.support());
    std::vector<int> sigma = part.nodes(split.first_block);
    for (int v : part.nodes(other(split.first_block))) sigma.push_back(v);
    const int depth = 1 + static_cast<int>(rng() % 2);
    MixerFreezing f(nn, depth);
    for (int v : split.cold) f.freeze(v);
    for (int v : split.hot) f.freeze_from_layer(v, 2);
    try {
      const auto cc = place_cuts(build_dqva(g, s, depth, sigma, f), part, split.hot, split.inter_neighbors);
      if (cc.num_cuts() != static_cast<int>(split.inter_neighbors.size())) ++mismatches;
      total_cuts += cc.num_cuts();
    } catch (const std::exception&) {
      ++mismatches;
    }
  }
  return {mismatches == 0,
          "100 triples, " + std::to_string(mismatches) + " mismatches, " + std::to_string(total_cuts) + " cuts total"};
}

Outcome hot_node_optimality() {
  Rng rng(404);
  int graphs = 0, bad = 0;
  for (int i = 0; i < 300 && graphs < 100; ++i) {
    const int n = 6 + static_cast<int>(rng() % 11);
    const Graph g = (i % 2) ? random_regular(n + n % 2, 3, rng()) : erdos_renyi(n, 0.25, rng());
    const Partition part = random_bisection(g, rng());
    if (classify_nodes(g, part).all_cut().size() > 10) continue;
    ++graphs;
    std::vector<int> side;
    for (Side s : part.sides()) side.push_back(s == Side::kA ? 0 : 1);
    for (int t = 0; t <= 4; ++t) {
      const auto got = select_hot_nodes(g, part, t);
      const auto want = oracle::best_hot_split(g, side, t);
      const long recomputed = oracle::cut_cost(g, side, got.cold);
      if (got.cost != want.cost || recomputed != got.cost || static_cast<int>(got.inter_neighbors.size()) > t) ++bad;
    }
  }
  return {bad == 0 && graphs > 0,
          std::to_string(graphs) + " fixtures x 5 budgets, " + std::to_string(bad) + " disagreements"};
}

// Mean best weight per t at the last round, plus standard errors and ratios.
struct SeriesStat {
  double mean = 0.0, se = 0.0, ratio = 0.0;
};

Outcome fig5(const fs::path& out, ExperimentSummary& summary) {
  ExperimentSpec spec;
  spec.name = "fig5";
  spec.families = {GraphFamily::parse("regular:3")};
  spec.n = 14;
  spec.graphs = 10;
  spec.algorithms = {"qdc", "bh", "brute"};
  spec.t_values = {0, 1, 2, 3};
  spec.qdc.rounds = 8;
  spec.qdc.repetitions = 5;
  spec.master_seed = 2021;
  spec.output = out;
  const auto start = std::chrono::steady_clock::now();
  summary = run_experiment(spec);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::map<int, SeriesStat> qdc;
  SeriesStat bh;
  for (const auto& row : summary.rows) {
    if (row.algorithm == "qdc" && row.round == spec.qdc.rounds) qdc[*row.t] = {row.mean_weight, row.stderr_weight, row.mean_ratio};
    if (row.algorithm == "bh") bh = {row.mean_weight, row.stderr_weight, row.mean_ratio};
  }
  bool trend = qdc.size() == spec.t_values.size();
  std::string series;
  for (std::size_t i = 0; i < spec.t_values.size() && trend; ++i) {
    const auto& cur = qdc[spec.t_values[i]];
    series += (i ? ", " : "") + std::string("t=") + std::to_string(spec.t_values[i]) + ": " + fmt("%.2f", cur.mean) +
              "+-" + fmt("%.2f", cur.se);
    if (i > 0) {
      const auto& prev = qdc[spec.t_values[i - 1]];
      if (cur.mean < prev.mean - std::max(prev.se, cur.se)) trend = false;
    }
  }
  const double top_ratio = qdc.empty() ? 0.0 : qdc.rbegin()->second.ratio;
  const bool beats_bh = top_ratio >= bh.ratio;
  const bool ok = trend && beats_bh && summary.failures.empty() && secs <= kFig5Seconds;
  return {ok, series + "; ratio at t=3 " + fmt("%.4f", top_ratio) + " vs BH " + fmt("%.4f", bh.ratio) + ", " +
                  std::to_string(summary.failures.size()) + " failed runs, " + fmt("%.0f", secs) + " s (limit 3600 s)"};
}

Outcome fig2(const fs::path& out, ExperimentSummary& summary) {
  ExperimentSpec spec;
  spec.name = "fig2";
  spec.families = {GraphFamily::parse("er:0.1"), GraphFamily::parse("regular:3")};
  spec.n = 60;
  spec.graphs = 10;
  spec.algorithms = {"cdc", "bh"};
  spec.qdc.rounds = 8;
  spec.qdc.repetitions = 1;
  spec.master_seed = 1999;
  spec.output = out;
  const auto start = std::chrono::steady_clock::now();
  summary = run_experiment(spec);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double regular = 0.0, er = 0.0;
  for (const auto& row : summary.rows) {
    if (row.algorithm != "cdc" || row.round != spec.qdc.rounds) continue;
    (row.family == "regular3" ? regular : er) = row.mean_ratio;
  }
  const bool ok = regular >= 1.0 && regular >= er && summary.failures.empty() && secs <= kFig2Seconds;
  return {ok, "final mean R_BH regular " + fmt("%.4f", regular) + " (need >= 1), ER " + fmt("%.4f", er) + ", " +
                  fmt("%.1f", secs) + " s (limit 300 s)"};
}

Outcome kl_quality() {
  double kl = 0.0, rnd = 0.0;
  int unbalanced = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Graph g = random_regular(60, 3, derive_seed(505, i));
    const Partition p = kernighan_lin_bisect(g, derive_seed(506, i));
    const Partition r = random_bisection(g, derive_seed(507, i));
    const long a = static_cast<long>(p.nodes(Side::kA).size()), b = static_cast<long>(p.nodes(Side::kB).size());
    if (std::abs(a - b) > 1) ++unbalanced;
    kl += static_cast<double>(p.num_crossing()) / 100;
    rnd += static_cast<double>(r.num_crossing()) / 100;
  }
  return {kl < rnd && unbalanced == 0, "mean crossing KL " + fmt("%.2f", kl) + " vs random " + fmt("%.2f", rnd) + ", " +
                                           std::to_string(unbalanced) + " unbalanced"};
}

Outcome identity_channel() {
  const std::vector<std::vector<OpKind>> preps = {{OpKind::kH},
                                                  {OpKind::kX, OpKind::kH},
                                                  {OpKind::kH, OpKind::kS},
                                                  {OpKind::kX, OpKind::kH, OpKind::kS},
                                                  {OpKind::kX, OpKind::kX},
                                                  {OpKind::kX}};
  const std::vector<std::vector<OpKind>> readouts = {{OpKind::kH}, {OpKind::kSdg, OpKind::kH}, {}};
  double worst = 0.0;
  for (const auto& prep : preps) {
    for (const auto& readout : readouts) {
      OpCircuit c(1, 0);
      std::vector<int> where;
      for (auto k : prep) {
        c.gate(k, 0);
        where.push_back(0);
      }
      for (auto k : readout) {
        c.gate(k, 0);
        where.push_back(1);
      }
      const std::vector<int> home{1};
      const CutCircuit cc = cut_circuit(c, Bitstring(1), where, home);
      if (cc.num_cuts() != 1) return {false, "identity wire was not cut"};
      const auto got = reconstruct(evaluate_fragments(cc, {}), cc).distribution;
      worst = std::max(worst, max_abs_difference(got, simulate(c, {}, Bitstring(1)).probabilities()));
    }
  }
  return {worst <= kIdentityTol, "6 inputs x 3 readout bases, max error " + fmt("%.2e", worst) + " (tol 1e-12)"};
}

Outcome monotone(const std::vector<const ExperimentSummary*>& runs) {
  int files = 0;
  std::size_t violations = 0;
  for (const auto* s : runs) {
    files += s->files_checked;
    violations += s->violations.size();
    for (const auto& g : s->graphs)
      for (const auto& [name, trace] : g.best_trace)
        for (std::size_t i = 1; i < trace.size(); ++i)
          if (trace[i] < trace[i - 1]) ++violations;
  }
  return {files > 0 && violations == 0,
          std::to_string(files) + " result files re-checked, " + std::to_string(violations) + " violations"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> only;
  std::string out = (fs::temp_directory_path() / "qdc_acceptance").string();
  app.add_option("--only", only, "Run only these criteria");
  app.add_option("--out", out, "Scratch output directory");
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int k) { return only.empty() || std::find(only.begin(), only.end(), k) != only.end(); };
  fs::remove_all(out);

  ExperimentSummary fig5_summary, fig2_summary;
  bool ran5 = false, ran2 = false;
  const std::vector<std::pair<int, std::string>> names = {
      {1, "cutting oracle equivalence"}, {2, "feasibility preservation"}, {3, "cut count identity"},
      {4, "hot node optimality"},        {5, "t trend at desk scale"},    {6, "R_BH trend at desk scale"},
      {7, "KL partition quality"},       {8, "gamma identity channel"},   {9, "monotone best-so-far"}};
  int failed = 0;
  for (const auto& [k, name] : names) {
    if (!wanted(k)) continue;
    Outcome o;
    try {
      switch (k) {
        case 1: o = cutting_oracle(); break;
        case 2: o = feasibility(); break;
        case 3: o = cut_count_identity(); break;
        case 4: o = hot_node_optimality(); break;
        case 5:
          o = fig5(out, fig5_summary);
          ran5 = true;
          break;
        case 6:
          o = fig2(out, fig2_summary);
          ran2 = true;
          break;
        case 7: o = kl_quality(); break;
        case 8: o = identity_channel(); break;
        case 9: {
          if (!ran5) fig5(out, fig5_summary);
          if (!ran2) fig2(out, fig2_summary);
          o = monotone({&fig5_summary, &fig2_summary});
          break;
        }
      }
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
