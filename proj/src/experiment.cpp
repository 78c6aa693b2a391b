#include "qdc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qdc/classical_mis.hpp"
#include "qdc/random.hpp"
#include "qdc/serialize.hpp"

namespace qdc {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T x{};
  is >> x;
  if (!is || !(is >> std::ws).eof()) throw std::invalid_argument("bad value for " + key + ": '" + value + "'");
  return x;
}

}  // namespace

GraphFamily GraphFamily::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : text.substr(colon + 1);
  GraphFamily f;
  if (kind == "regular") {
    f.kind = Kind::kRegular;
    if (!param.empty()) f.degree = parse_number<int>("regular degree", param);
    if (f.degree < 0) throw std::invalid_argument("regular degree must be >= 0");
  } else if (kind == "er") {
    f.kind = Kind::kErdosRenyi;
    if (!param.empty()) f.edge_prob = parse_number<double>("edge probability", param);
    if (!(f.edge_prob >= 0.0 && f.edge_prob <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
  } else {
    throw std::invalid_argument("unknown graph family '" + text + "' (expected regular:<d> or er:<p>)");
  }
  return f;
}

std::string GraphFamily::name() const {
  std::ostringstream os;
  if (kind == Kind::kRegular) {
    os << "regular" << degree;
  } else {
    os << "er" << edge_prob;
  }
  return os.str();
}

Graph GraphFamily::generate(int n, std::uint64_t seed) const {
  return kind == Kind::kRegular ? random_regular(n, degree, seed) : erdos_renyi(n, edge_prob, seed);
}

void ExperimentSpec::set(const std::string& key, const std::string& value) {
  if (key == "name") {
    name = value;
  } else if (key == "families" || key == "family") {
    families.clear();
    for (const auto& f : split_list(value)) families.push_back(GraphFamily::parse(f));
  } else if (key == "n") {
    n = parse_number<int>(key, value);
  } else if (key == "graphs") {
    graphs = parse_number<int>(key, value);
  } else if (key == "algorithms") {
    algorithms = split_list(value);
  } else if (key == "t") {
    t_values.clear();
    for (const auto& t : split_list(value)) t_values.push_back(parse_number<int>(key, t));
  } else if (key == "rounds") {
    qdc.rounds = parse_number<int>(key, value);
  } else if (key == "depth" || key == "p") {
    qdc.depth = parse_number<int>(key, value);
  } else if (key == "repetitions") {
    qdc.repetitions = parse_number<int>(key, value);
  } else if (key == "max_evals") {
    qdc.max_evals = parse_number<int>(key, value);
  } else if (key == "ftol") {
    qdc.ftol = parse_number<double>(key, value);
  } else if (key == "bias_epsilon") {
    qdc.bias_epsilon = parse_number<double>(key, value);
  } else if (key == "shots") {
    qdc.shots = parse_number<int>(key, value);
  } else if (key == "max_fragment_qubits") {
    qdc.max_fragment_qubits = parse_number<int>(key, value);
  } else if (key == "warm_start") {
    if (value == "all_zeros") {
      qdc.warm_start = WarmStart::kAllZeros;
    } else if (value == "greedy") {
      qdc.warm_start = WarmStart::kGreedy;
    } else {
      throw std::invalid_argument("warm_start must be all_zeros or greedy");
    }
  } else if (key == "seed") {
    master_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "output") {
    output = value;
  } else if (key == "workers") {
    workers = parse_number<int>(key, value);
  } else if (key == "brute_cap") {
    brute_cap = parse_number<int>(key, value);
  } else {
    throw std::invalid_argument("unknown experiment key '" + key + "'");
  }
}

void ExperimentSpec::validate() const {
  if (algorithms.empty()) throw std::invalid_argument("experiment: algorithm list is empty");
  for (const auto& a : algorithms) {
    if (a != "qdc" && a != "bh" && a != "cdc" && a != "brute") {
      throw std::invalid_argument("experiment: unknown algorithm '" + a + "'");
    }
  }
  if (!master_seed) throw std::invalid_argument("experiment: a master seed is required");
  if (families.empty()) throw std::invalid_argument("experiment: no graph family");
  if (n < 2) throw std::invalid_argument("experiment: n must be >= 2");
  if (graphs < 1) throw std::invalid_argument("experiment: graphs must be >= 1");
  if (workers < 1) throw std::invalid_argument("experiment: workers must be >= 1");
  if (name.empty() || name.find('/') != std::string::npos) throw std::invalid_argument("experiment: bad name");
  if (std::find(algorithms.begin(), algorithms.end(), "qdc") != algorithms.end()) {
    if (t_values.empty()) throw std::invalid_argument("experiment: empty t sweep");
    for (int t : t_values)
      if (t < 0) throw std::invalid_argument("experiment: t must be >= 0");
  }
  qdc.validate();
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
  ExperimentSpec spec;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": expected key = value");
    }
    spec.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return spec;
}

ExperimentSpec read_experiment_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file " + path.string());
  return parse_experiment_spec(in);
}

namespace {

struct GraphCase {
  std::string id;
  std::size_t family_index = 0;
  Graph graph;
  std::uint64_t seed = 0;
};

struct Job {
  std::size_t graph = 0;
  std::string algorithm;
  std::optional<int> t;
  int rep = 0;
};

std::string series_name(const Job& j) {
  return j.t ? j.algorithm + "_t" + std::to_string(*j.t) : j.algorithm;
}

struct JobResult {
  bool ok = false;
  std::vector<int> trace;
  std::string error;
};

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

JobResult run_job(const ExperimentSpec& spec, const GraphCase& gc, const Job& job, const fs::path& dir) {
  JobResult res;
  const Graph& g = gc.graph;
  const std::uint64_t seed = derive_seed(gc.seed, 100 + static_cast<std::uint64_t>(job.rep));
  Json j{{"graph_id", gc.id}, {"algorithm", job.algorithm}, {"rep", job.rep}, {"seed", seed}};
  j["t"] = job.t ? Json(*job.t) : Json(nullptr);
  Bitstring best;
  if (job.algorithm == "qdc") {
    QdcConfig cfg = spec.qdc;
    cfg.max_cuts = *job.t;
    cfg.seed = seed;
    QdcResult r = qdc_solve(g, cfg);
    best = r.best;
    res.trace = r.record.trace;
    j["record"] = to_json(r.record);
  } else if (job.algorithm == "cdc") {
    DivideAndConquerResult r = classical_divide_and_conquer(g, spec.qdc.rounds, seed, spec.qdc.bias_epsilon);
    best = r.best;
    res.trace = r.trace;
    j["record"] = to_json(r);
  } else if (job.algorithm == "bh") {
    best = boppana_halldorsson(g);
    res.trace = {hamming_weight(best)};
  } else {
    best = brute_force_mis(g, spec.brute_cap);
    res.trace = {hamming_weight(best)};
  }
  if (!is_independent_set(g, best)) throw std::logic_error(job.algorithm + " produced an infeasible set");
  j.update(solution_json(g, best));
  j["trace"] = res.trace;
  const fs::path sub = dir / gc.id / series_name(job);
  fs::create_directories(sub);
  write_json(sub / (std::to_string(job.rep) + ".json"), j);
  res.ok = true;
  return res;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentSummary summary;
  const fs::path dir = spec.output / spec.name;
  summary.directory = dir;
  fs::create_directories(dir);

  std::vector<GraphCase> cases;
  for (std::size_t fi = 0; fi < spec.families.size(); ++fi) {
    const std::uint64_t family_seed = derive_seed(*spec.master_seed, fi);
    for (int gi = 0; gi < spec.graphs; ++gi) {
      GraphCase gc;
      gc.family_index = fi;
      gc.seed = derive_seed(family_seed, static_cast<std::uint64_t>(gi));
      gc.graph = spec.families[fi].generate(spec.n, gc.seed);
      std::ostringstream id;
      id << spec.families[fi].name() << '_' << std::setw(2) << std::setfill('0') << gi;
      gc.id = id.str();
      fs::create_directories(dir / gc.id);
      write_graph_file(dir / gc.id / "graph.txt", gc.graph);

      GraphOutcome out;
      out.graph_id = gc.id;
      out.family = spec.families[fi].name();
      out.num_nodes = spec.n;
      out.bh_weight = hamming_weight(boppana_halldorsson(gc.graph));
      if (spec.n <= spec.brute_cap) out.exact_weight = hamming_weight(brute_force_mis(gc.graph, spec.brute_cap));
      summary.graphs.push_back(std::move(out));
      cases.push_back(std::move(gc));
    }
  }

  std::vector<Job> jobs;
  for (std::size_t gi = 0; gi < cases.size(); ++gi) {
    for (const auto& algo : spec.algorithms) {
      if (algo == "qdc") {
        for (int t : spec.t_values)
          for (int rep = 0; rep < spec.qdc.repetitions; ++rep) jobs.push_back({gi, algo, t, rep});
      } else if (algo == "cdc") {
        for (int rep = 0; rep < spec.qdc.repetitions; ++rep) jobs.push_back({gi, algo, std::nullopt, rep});
      } else {
        jobs.push_back({gi, algo, std::nullopt, 0});
      }
    }
  }

  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_job(spec, cases[jobs[i].graph], jobs[i], dir);
      } catch (const std::exception& e) {
        results[i].ok = false;
        results[i].error = e.what();
      }
    }
  };
  const int threads = std::min<int>(spec.workers, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    if (!results[i].ok) {
      summary.failures.push_back(cases[job.graph].id + "/" + series_name(job) + "/" + std::to_string(job.rep) +
                                 ": " + results[i].error);
      continue;
    }
    auto& trace = summary.graphs[job.graph].best_trace[series_name(job)];
    const auto& tr = results[i].trace;
    if (trace.size() < tr.size()) trace.resize(tr.size(), 0);
    for (std::size_t r = 0; r < tr.size(); ++r) trace[r] = std::max(trace[r], tr[r]);
  }

  // one row per (family, series, round)
  std::vector<std::string> series;
  for (const auto& algo : spec.algorithms) {
    if (algo == "qdc") {
      for (int t : spec.t_values) series.push_back("qdc_t" + std::to_string(t));
    } else {
      series.push_back(algo);
    }
  }
  for (const auto& family : spec.families) {
    const std::string fname = family.name();
    for (const auto& s : series) {
      const bool single = s == "bh" || s == "brute";
      const int rounds = single ? 1 : spec.qdc.rounds;
      for (int r = 0; r < rounds; ++r) {
        std::vector<double> weights, ratios;
        for (const auto& g : summary.graphs) {
          if (g.family != fname) continue;
          auto it = g.best_trace.find(s);
          if (it == g.best_trace.end() || it->second.size() <= static_cast<std::size_t>(r)) continue;
          const double w = it->second[r];
          const int ref = g.exact_weight ? *g.exact_weight : g.bh_weight;
          weights.push_back(w);
          if (ref > 0) ratios.push_back(w / ref);
        }
        if (weights.empty()) continue;
        SummaryRow row;
        row.family = fname;
        row.algorithm = s.starts_with("qdc") ? "qdc" : s;
        if (s.starts_with("qdc_t")) row.t = std::stoi(s.substr(5));
        row.round = single ? 0 : r + 1;
        row.count = static_cast<int>(weights.size());
        double sum = 0.0;
        for (double w : weights) sum += w;
        row.mean_weight = sum / weights.size();
        if (weights.size() > 1) {
          double ss = 0.0;
          for (double w : weights) ss += (w - row.mean_weight) * (w - row.mean_weight);
          row.stderr_weight = std::sqrt(ss / (weights.size() - 1) / weights.size());
        }
        double rs = 0.0;
        for (double x : ratios) rs += x;
        row.mean_ratio = ratios.empty() ? 0.0 : rs / ratios.size();
        summary.rows.push_back(row);
      }
    }
  }

  {
    std::ofstream csv(dir / "summary.csv");
    csv << "family,algorithm,t,round,mean_weight,stderr_weight,mean_ratio\n";
    for (const auto& row : summary.rows) {
      csv << row.family << ',' << row.algorithm << ',' << (row.t ? std::to_string(*row.t) : "") << ','
          << row.round << ',' << format_double(row.mean_weight) << ',' << format_double(row.stderr_weight) << ','
          << format_double(row.mean_ratio) << '\n';
    }
  }
  {
    const fs::path log = dir / "failures.log";
    if (summary.failures.empty()) {
      fs::remove(log);
    } else {
      std::ofstream out(log);
      for (const auto& f : summary.failures) out << f << '\n';
    }
  }

  summary.files_checked = verify_experiment_outputs(dir, summary.violations);
  return summary;
}

namespace {

void check_bitstring(const Graph& g, const Json& value, const std::string& where, std::vector<std::string>& bad) {
  if (!value.is_string()) {
    bad.push_back(where + ": missing bitstring");
    return;
  }
  const std::string text = value.get<std::string>();
  if (text.size() != static_cast<std::size_t>(g.num_nodes())) {
    bad.push_back(where + ": bitstring length " + std::to_string(text.size()));
    return;
  }
  if (!is_independent_set(g, Bitstring::from_string(text))) bad.push_back(where + ": not an independent set");
}

}  // namespace

int verify_experiment_outputs(const fs::path& dir, std::vector<std::string>& violations) {
  int checked = 0;
  std::vector<fs::path> graph_dirs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory()) graph_dirs.push_back(e.path());
  std::sort(graph_dirs.begin(), graph_dirs.end());
  for (const auto& gdir : graph_dirs) {
    const Graph g = read_graph_file(gdir / "graph.txt");
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(gdir))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      ++checked;
      const std::string where = fs::relative(file, dir).string();
      Json j;
      try {
        std::ifstream in(file);
        j = Json::parse(in);
      } catch (const std::exception& e) {
        violations.push_back(where + ": " + e.what());
        continue;
      }
      check_bitstring(g, j.value("bitstring", Json()), where, violations);
      const auto trace = j.value("trace", std::vector<int>{});
      if (trace.empty()) violations.push_back(where + ": empty trace");
      for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i] < trace[i - 1]) violations.push_back(where + ": trace decreases at round " + std::to_string(i + 1));
      }
      if (!trace.empty() && trace.back() != j.value("weight", -1)) {
        violations.push_back(where + ": final trace value differs from the reported weight");
      }
      if (j.contains("record") && j["record"].contains("rounds")) {
        for (const auto& round : j["record"]["rounds"]) {
          const std::string at = where + " round " + std::to_string(round.value("round", 0));
          check_bitstring(g, round.value("state", Json()), at + " state", violations);
          check_bitstring(g, round.value("best", Json()), at + " best", violations);
          for (const auto& it : round["iterations"]) check_bitstring(g, it.value("candidate", Json()), at, violations);
        }
      }
    }
  }
  return checked;
}

}  // namespace qdc
