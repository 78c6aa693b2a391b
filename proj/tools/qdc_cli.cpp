#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qdc/classical_mis.hpp"
#include "qdc/experiment.hpp"
#include "qdc/graph.hpp"
#include "qdc/random.hpp"
#include "qdc/serialize.hpp"
#include "qdc/solver.hpp"
#include "qdc/verification.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kFailure = 2;

// a check that failed after a successful run
struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

void emit(const qdc::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum divide and conquer for maximum independent set"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random graph file");
  std::string family = "regular";
  int gen_n = 10, gen_d = 3;
  double gen_p = 0.1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--family", family, "regular or er")->check(CLI::IsMember({"regular", "er"}));
  gen->add_option("--n", gen_n, "Number of nodes")->required();
  gen->add_option("--d", gen_d, "Degree (regular)");
  gen->add_option("--p", gen_p, "Edge probability (er)");
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--out", gen_out, "Output file (stdout if omitted)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve MIS on a graph file");
  std::string algorithm = "qdc", graph_path, solve_out, warm = "all_zeros";
  qdc::QdcConfig cfg;
  cfg.repetitions = 1;
  int topk = 0;
  solve->add_option("--algorithm", algorithm, "bh, cdc, qdc or brute")
      ->check(CLI::IsMember({"bh", "cdc", "qdc", "brute"}));
  solve->add_option("--graph", graph_path, "Graph file")->required();
  solve->add_option("--rounds", cfg.rounds, "Partition rounds");
  solve->add_option("--t", cfg.max_cuts, "Cut budget");
  solve->add_option("--p", cfg.depth, "Ansatz depth");
  solve->add_option("--seed", cfg.seed, "Seed")->required();
  solve->add_option("--max-evals", cfg.max_evals, "Optimizer evaluations per inner iteration (0: 50 per parameter)");
  solve->add_option("--ftol", cfg.ftol, "Optimizer value-spread tolerance");
  solve->add_option("--bias-epsilon", cfg.bias_epsilon, "Edge weight factor at selected nodes");
  solve->add_option("--repetitions", cfg.repetitions, "Independent runs; the best is reported");
  solve->add_option("--shots", cfg.shots, "Sample the reconstructed distribution (0: exact)");
  solve->add_option("--warm-start", warm, "all_zeros or greedy")->check(CLI::IsMember({"all_zeros", "greedy"}));
  solve->add_option("--top-k", topk, "Also print the k most likely strings of the last circuit (qdc)");
  solve->add_option("--out", solve_out, "Write JSON here instead of stdout");

  // verify-cutting
  auto* verify = app.add_subcommand("verify-cutting", "Compare cut reconstruction with uncut simulation");
  int v_n = 8, v_cuts = 1, v_trials = 10, v_depth = 1;
  std::uint64_t v_seed = 0;
  double v_tol = 1e-9;
  verify->add_option("--n", v_n, "Qubits (<= 14)")->check(CLI::Range(2, 14));
  verify->add_option("--cuts", v_cuts, "Cuts (<= 3)")->check(CLI::Range(0, 3));
  verify->add_option("--trials", v_trials, "Random instances")->check(CLI::PositiveNumber);
  verify->add_option("--p", v_depth, "Ansatz depth")->check(CLI::PositiveNumber);
  verify->add_option("--seed", v_seed, "Seed")->required();
  verify->add_option("--tolerance", v_tol, "Maximum allowed TV distance");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment sweep from a spec file");
  std::string spec_path;
  std::vector<std::string> overrides;
  experiment->add_option("spec", spec_path, "Spec file (key = value lines)")->required();
  experiment->add_option("--set", overrides, "Override a spec key: key=value");

  // partition
  auto* partition = app.add_subcommand("partition", "Kernighan-Lin bisection and cut/uncut node sets");
  std::string part_graph;
  std::uint64_t part_seed = 0;
  partition->add_option("--graph", part_graph, "Graph file")->required();
  partition->add_option("--seed", part_seed, "Seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) {
      qdc::Graph g = family == "regular" ? qdc::random_regular(gen_n, gen_d, gen_seed)
                                         : qdc::erdos_renyi(gen_n, gen_p, gen_seed);
      if (gen_out.empty()) {
        qdc::write_graph(std::cout, g);
      } else {
        qdc::write_graph_file(gen_out, g);
      }
    } else if (*solve) {
      cfg.warm_start = warm == "greedy" ? qdc::WarmStart::kGreedy : qdc::WarmStart::kAllZeros;
      const qdc::Graph g = qdc::read_graph_file(graph_path);
      const auto start = std::chrono::steady_clock::now();
      qdc::Json j{{"algorithm", algorithm}};
      qdc::Bitstring best;
      std::vector<int> trace;
      if (algorithm == "brute") {
        best = qdc::brute_force_mis(g);
        trace = {qdc::hamming_weight(best)};
      } else if (algorithm == "bh") {
        best = qdc::boppana_halldorsson(g);
        trace = {qdc::hamming_weight(best)};
      } else if (algorithm == "cdc") {
        auto r = qdc::classical_divide_and_conquer(g, cfg.rounds, cfg.seed, cfg.bias_epsilon);
        best = r.best;
        trace = r.trace;
        j["record"] = qdc::to_json(r);
      } else {
        auto rep = qdc::qdc_best_of(g, cfg);
        const auto& win = rep.runs[rep.best_index];
        best = win.best;
        trace = win.record.trace;
        j["record"] = qdc::to_json(win.record);
        j["repetition"] = rep.best_index;
        if (topk > 0 && !win.record.rounds.empty()) {
          // the last inner iteration of a round is never accepted, so it
          // started from the round's final state
          const auto& round = win.record.rounds.back();
          const auto& it = round.iterations.back();
          const qdc::Bitstring& init = round.state;
          std::vector<int> sigma = round.partition.nodes(it.split.first_block);
          for (int v : round.partition.nodes(qdc::other(it.split.first_block))) sigma.push_back(v);
          qdc::MixerFreezing fr(g.num_nodes(), cfg.depth);
          for (int v : it.split.cold) fr.freeze(v);
          for (int v : it.split.hot) fr.freeze_from_layer(v, 2);
          auto circuit = qdc::build_dqva(g, init, cfg.depth, sigma, fr, cfg.conventions);
          auto cc = qdc::place_cuts(circuit, round.partition, it.split.hot, it.split.inter_neighbors);
          auto rec = qdc::reconstruct(qdc::evaluate_fragments(cc, it.params), cc);
          j["top_k"] = qdc::top_k_json(rec.distribution, static_cast<std::size_t>(topk));
          j["reconstruction"] = qdc::reconstruction_diagnostics(rec);
        }
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (!qdc::is_independent_set(g, best)) throw std::logic_error("solver returned an infeasible set");
      j.update(qdc::solution_json(g, best));
      j["runtime_ms"] = ms;
      j["trace"] = trace;
      emit(j, solve_out);
    } else if (*verify) {
      double worst = 0.0;
      for (int i = 0; i < v_trials; ++i) {
        const auto inst = qdc::random_cut_instance(v_n, v_cuts, v_depth, qdc::derive_seed(v_seed, i));
        const auto t = qdc::run_cutting_trial(inst);
        worst = std::max(worst, t.tv);
        qdc::Json line{{"trial", i},          {"n", t.num_qubits},         {"depth", t.depth},
                       {"n_cuts", t.num_cuts}, {"n_variants", t.num_variants}, {"n_terms", t.num_terms},
                       {"tv_vs_uncut", t.tv}, {"max_abs", t.max_abs},       {"pre_clamp_min", t.pre_clamp_min},
                       {"pre_clamp_sum", t.pre_clamp_sum}};
        std::cout << line.dump() << '\n';
      }
      std::cout << "max_tv " << worst << '\n';
      if (worst > v_tol) throw ToleranceFailure("TV distance exceeds tolerance");
    } else if (*experiment) {
      qdc::ExperimentSpec spec = qdc::read_experiment_spec(spec_path);
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + o + "'");
        spec.set(o.substr(0, eq), o.substr(eq + 1));
      }
      const auto summary = qdc::run_experiment(spec);
      std::cout << "wrote " << (summary.directory / "summary.csv").string() << '\n';
      for (const auto& f : summary.failures) std::cerr << "failed: " << f << '\n';
      std::cout << "verified " << summary.files_checked << " result files, " << summary.violations.size()
                << " violations\n";
      for (const auto& v : summary.violations) std::cerr << "violation: " << v << '\n';
      if (!summary.violations.empty()) throw ToleranceFailure("result verification failed");
    } else if (*partition) {
      const qdc::Graph g = qdc::read_graph_file(part_graph);
      const qdc::Partition part = qdc::kernighan_lin_bisect(g, part_seed);
      const auto cls = qdc::classify_nodes(g, part);
      std::cout << "A: " << join(part.nodes(qdc::Side::kA)) << '\n'
                << "B: " << join(part.nodes(qdc::Side::kB)) << '\n'
                << "crossing_edges: " << part.num_crossing() << '\n'
                << "uncut_A: " << join(cls.uncut_a) << '\n'
                << "cut_A: " << join(cls.cut_a) << '\n'
                << "uncut_B: " << join(cls.uncut_b) << '\n'
                << "cut_B: " << join(cls.cut_b) << '\n';
    }
  } catch (const ToleranceFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
