#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdc/classical_mis.hpp"
#include "qdc/cutting.hpp"
#include "qdc/graph.hpp"
#include "qdc/serialize.hpp"
#include "qdc/simulator.hpp"
#include "qdc/solver.hpp"
#include "qdc/verification.hpp"

namespace py = pybind11;
using namespace qdc;

namespace {

Bitstring bits(const Graph& g, const std::string& s) {
  Bitstring b = Bitstring::from_string(s);
  if (static_cast<int>(b.size()) != g.num_nodes()) throw std::invalid_argument("bitstring length differs from n");
  return b;
}

Partition make_partition(const Graph& g, const std::string& sides) {
  std::vector<Side> s;
  for (char c : sides) {
    if (c != 'A' && c != 'B') throw std::invalid_argument("sides must be a string of 'A' and 'B'");
    s.push_back(c == 'A' ? Side::kA : Side::kB);
  }
  return Partition(g, s);
}

py::object json_to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum divide and conquer for maximum independent set";

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Graph::num_nodes)
      .def_property_readonly("edges", &Graph::edges)
      .def("neighbors", &Graph::neighbors)
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("__eq__", &Graph::operator==)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_nodes()) + ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("complete_graph", &complete_graph);
  m.def("path_graph", &path_graph);
  m.def("cycle_graph", &cycle_graph);
  m.def("random_regular", &random_regular, py::arg("n"), py::arg("d"), py::arg("seed"));
  m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("read_graph", [](const std::string& path) { return read_graph_file(path); });
  m.def("write_graph", [](const std::string& path, const Graph& g) { write_graph_file(path, g); });

  m.def(
      "bisect",
      [](const Graph& g, std::uint64_t seed) { return sides_string(kernighan_lin_bisect(g, seed)); },
      py::arg("graph"), py::arg("seed"), "Kernighan-Lin bisection as a string of 'A'/'B', node 0 first.");
  m.def(
      "classify_nodes",
      [](const Graph& g, const std::string& sides) {
        const auto c = classify_nodes(g, make_partition(g, sides));
        py::dict d;
        d["uncut_a"] = c.uncut_a;
        d["cut_a"] = c.cut_a;
        d["uncut_b"] = c.uncut_b;
        d["cut_b"] = c.cut_b;
        return d;
      },
      py::arg("graph"), py::arg("sides"));
  m.def(
      "select_hot_nodes",
      [](const Graph& g, const std::string& sides, int t) {
        return json_to_py(to_json(select_hot_nodes(g, make_partition(g, sides), t)));
      },
      py::arg("graph"), py::arg("sides"), py::arg("t"));

  m.def(
      "is_independent_set", [](const Graph& g, const std::string& b) { return is_independent_set(g, bits(g, b)); },
      py::arg("graph"), py::arg("bitstring"));
  m.def(
      "brute_force_mis", [](const Graph& g) { return brute_force_mis(g).to_string(); }, py::arg("graph"));
  m.def(
      "boppana_halldorsson", [](const Graph& g) { return boppana_halldorsson(g).to_string(); }, py::arg("graph"));
  m.def(
      "classical_divide_and_conquer",
      [](const Graph& g, int rounds, std::uint64_t seed, double eps) {
        const auto r = classical_divide_and_conquer(g, rounds, seed, eps);
        Json j = to_json(r);
        j["bitstring"] = r.best.to_string();
        return json_to_py(j);
      },
      py::arg("graph"), py::arg("rounds"), py::arg("seed"), py::arg("bias_epsilon") = 0.1);

  m.def("gamma_coeff", &gamma_coeff, py::arg("b"), py::arg("b_prime"));
  m.def(
      "verify_cutting",
      [](int n, int cuts, int depth, std::uint64_t seed) {
        const auto t = run_cutting_trial(random_cut_instance(n, cuts, depth, seed));
        py::dict d;
        d["n_cuts"] = t.num_cuts;
        d["n_variants"] = t.num_variants;
        d["n_terms"] = t.num_terms;
        d["tv_vs_uncut"] = t.tv;
        d["pre_clamp_min"] = t.pre_clamp_min;
        d["pre_clamp_sum"] = t.pre_clamp_sum;
        return d;
      },
      py::arg("n"), py::arg("cuts"), py::arg("depth") = 1, py::arg("seed") = 0);

  m.def(
      "qdc_solve",
      [](const Graph& g, int rounds, int t, int p, std::uint64_t seed, int max_evals, const std::string& warm,
         int repetitions, int shots) {
        QdcConfig cfg;
        cfg.rounds = rounds;
        cfg.max_cuts = t;
        cfg.depth = p;
        cfg.seed = seed;
        cfg.max_evals = max_evals;
        cfg.repetitions = repetitions;
        cfg.shots = shots;
        if (warm == "greedy") {
          cfg.warm_start = WarmStart::kGreedy;
        } else if (warm != "all_zeros") {
          throw std::invalid_argument("warm_start must be 'all_zeros' or 'greedy'");
        }
        RepeatedResult rep;
        {
          py::gil_scoped_release release;
          rep = qdc_best_of(g, cfg);
        }
        const auto& win = rep.runs[rep.best_index];
        Json j = solution_json(g, win.best);
        j["trace"] = win.record.trace;
        j["record"] = to_json(win.record);
        return json_to_py(j);
      },
      py::arg("graph"), py::arg("rounds") = 8, py::arg("t") = 1, py::arg("p") = 1, py::arg("seed") = 0,
      py::arg("max_evals") = 0, py::arg("warm_start") = "all_zeros", py::arg("repetitions") = 1,
      py::arg("shots") = 0);
}
