#include <doctest.h>

#include <numbers>
#include <random>

#include "qdc/ansatz.hpp"
#include "qdc/cutting.hpp"
#include "qdc/simulator.hpp"
#include "qdc/solver.hpp"
#include "qdc/verification.hpp"

using namespace qdc;

namespace {

constexpr double kPi = std::numbers::pi;

Distribution reconstruct_at(const CutCircuit& cc, const std::vector<double>& theta) {
  return reconstruct(evaluate_fragments(cc, theta), cc).distribution;
}

// A = {0..4}, B = {5..9}; three crossing edges.
Graph ten_node_fixture() {
  return Graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {2, 5}, {3, 6}, {4, 7},
                    {5, 6}, {6, 7}, {7, 8}, {8, 9}, {5, 9}});
}

Partition ten_node_split(const Graph& g) {
  std::vector<Side> s(10, Side::kA);
  for (int v = 5; v < 10; ++v) s[v] = Side::kB;
  return Partition(g, s);
}

// DQVA circuit with the solver's freezing rules for the given hot set.
ParamCircuit frozen_ansatz(const Graph& g, const Partition& part, const std::vector<int>& hot, Side first, int depth,
                           const Bitstring& init) {
  const auto cls = classify_nodes(g, part);
  MixerFreezing f(g.num_nodes(), depth);
  for (int v : cls.all_cut()) {
    if (std::find(hot.begin(), hot.end(), v) == hot.end()) {
      f.freeze(v);
    } else {
      f.freeze_from_layer(v, 2);
    }
  }
  std::vector<int> sigma = part.nodes(first);
  for (int v : part.nodes(other(first))) sigma.push_back(v);
  return build_dqva(g, init, depth, sigma, f);
}

}  // namespace

TEST_CASE("gamma coefficients") {
  CHECK(gamma_coeff(0, 0) == doctest::Approx(4.0 / 3));
  CHECK(gamma_coeff(0, 1) == doctest::Approx(-2.0 / 3));
  CHECK(gamma_coeff(1, 1) == doctest::Approx(4.0 / 3));
  CHECK_THROWS(gamma_coeff(2, 0));
  CHECK(reconstruction_terms(3) == 1728);
}

TEST_CASE("identity channel reproduces every pauli eigenstate") {
  // preparation gates before the cut, basis rotation after it
  const std::vector<std::vector<OpKind>> preps = {{OpKind::kH},
                                                  {OpKind::kX, OpKind::kH},
                                                  {OpKind::kH, OpKind::kS},
                                                  {OpKind::kX, OpKind::kH, OpKind::kS},
                                                  {OpKind::kX, OpKind::kX},
                                                  {OpKind::kX}};
  const std::vector<std::vector<OpKind>> rotations = {{}, {OpKind::kH}, {OpKind::kSdg, OpKind::kH}};
  for (const auto& prep : preps) {
    for (const auto& rot : rotations) {
      OpCircuit c(1, 0);
      std::vector<int> where;
      for (auto k : prep) {
        c.gate(k, 0);
        where.push_back(0);
      }
      for (auto k : rot) {
        c.gate(k, 0);
        where.push_back(1);
      }
      const std::vector<int> home{1};
      const CutCircuit cc = cut_circuit(c, Bitstring(1), where, home);
      REQUIRE(cc.num_cuts() == 1);
      const auto got = reconstruct_at(cc, {});
      const auto want = simulate(c, {}, Bitstring(1)).probabilities();
      CHECK(max_abs_difference(got, want) <= 1e-12);
    }
  }
}

TEST_CASE("bell pair across a cut") {
  OpCircuit c(2, 0);
  c.gate(OpKind::kH, 0);
  c.gate(OpKind::kX, 0);
  c.mixer(1, 0b01, kPi / 2);
  c.gate(OpKind::kX, 0);
  const std::vector<int> where{0, 1, 1, 1};
  const std::vector<int> home{1, 1};
  const CutCircuit cc = cut_circuit(c, Bitstring(2), where, home);
  CHECK(cc.num_cuts() == 1);
  CHECK(cc.cuts[0].qubit == 0);
  CHECK(cc.cuts[0].position == 0);
  const auto p = reconstruct_at(cc, {});
  CHECK(p.probability(Bitstring::from_string("00")) == doctest::Approx(0.5));
  CHECK(p.probability(Bitstring::from_string("11")) == doctest::Approx(0.5));
  CHECK(total_variation(p, simulate(c, {}, Bitstring(2)).probabilities()) <= 1e-9);
}

TEST_CASE("an idle cut wire gives the product of marginals") {
  OpCircuit c(3, 0);
  c.mixer(0, 0b010, 0.6);
  c.mixer(2, 0b010, 1.1);
  const std::vector<int> where{0, 1};
  const std::vector<int> home{0, 1, 1};
  const CutCircuit cc = cut_circuit(c, Bitstring(3), where, home);
  REQUIRE(cc.num_cuts() == 1);
  const auto p = reconstruct_at(cc, {});
  const double p0 = std::pow(std::sin(0.6), 2), p2 = std::pow(std::sin(1.1), 2);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const double want = ((x & 1U) ? p0 : 1 - p0) * ((x & 4U) ? p2 : 1 - p2) * ((x & 2U) ? 0.0 : 1.0);
    CHECK(p[x] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("variant counts") {
  const Graph g = path_graph(4);
  const Partition part(g, {Side::kA, Side::kA, Side::kB, Side::kB});
  const auto c = frozen_ansatz(g, part, {}, Side::kA, 1, Bitstring(4));
  const CutCircuit none = place_cuts(c, part, {}, {});
  CHECK(none.num_cuts() == 0);
  const auto data = evaluate_fragments(none, std::vector<double>(c.num_free(), 0.4));
  CHECK(data[0].variants.size() == 1);
  CHECK(data[1].variants.size() == 1);

  Fragment in_only;
  in_only.cut_inputs = {0};
  CHECK(in_only.num_variants() == 6);
  Fragment out_two;
  out_two.cut_outputs = {0, 1};
  CHECK(out_two.num_variants() == 9);
  std::vector<PauliBasis> m;
  std::vector<PrepState> p;
  for (std::size_t v = 0; v < 9; ++v) {
    out_two.decode_variant(v, m, p);
    CHECK(out_two.variant_index(m, p) == v);
  }
}

TEST_CASE("path with one hot node is cut once on its neighbor") {
  const Graph g = path_graph(4);
  const Partition part(g, {Side::kA, Side::kA, Side::kB, Side::kB});
  const std::vector<int> hot{1};
  const auto inter = inter_graph_neighbors(g, part, hot);
  CHECK(inter == std::vector<int>{2});
  const auto c = frozen_ansatz(g, part, hot, Side::kA, 1, Bitstring(4));
  const CutCircuit cc = place_cuts(c, part, hot, inter);
  REQUIRE(cc.num_cuts() == 1);
  CHECK(cc.cuts[0].qubit == 2);
  CHECK(cc.cuts[0].from == 0);
  CHECK(cc.cuts[0].to == 1);
  const std::vector<double> theta{0.3, 1.2, 0.7, 2.0};
  REQUIRE(static_cast<int>(theta.size()) == c.num_free());
  CHECK(total_variation(reconstruct_at(cc, theta), simulate(c, theta).probabilities()) <= 1e-9);
}

TEST_CASE("ten node fixture at depth 2 needs exactly two cuts") {
  const Graph g = ten_node_fixture();
  const Partition part = ten_node_split(g);
  const auto cls = classify_nodes(g, part);
  CHECK(cls.uncut_a.size() == 2);
  CHECK(cls.cut_a.size() == 3);
  CHECK(cls.cut_b.size() == 3);
  CHECK(cls.uncut_b.size() == 2);
  const auto split = select_hot_nodes(g, part, 2);
  CHECK(split.inter_neighbors.size() == 2);
  const auto c = frozen_ansatz(g, part, split.hot, split.first_block, 2, Bitstring(10));
  const CutCircuit cc = place_cuts(c, part, split.hot, split.inter_neighbors);
  CHECK(cc.num_cuts() == 2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0, 2 * kPi);
  std::vector<double> theta(c.num_free());
  for (double& x : theta) x = angle(rng);
  const auto r = reconstruct(evaluate_fragments(cc, theta), cc);
  CHECK(r.num_terms == 144);
  CHECK(total_variation(r.distribution, simulate(c, theta).probabilities()) <= 1e-9);
}

TEST_CASE("unfrozen cut mixers beyond layer 1 break separability") {
  const Graph g = path_graph(4);
  const Partition part(g, {Side::kA, Side::kA, Side::kB, Side::kB});
  MixerFreezing f(4, 2);
  f.freeze(2);
  const auto c = build_dqva(g, Bitstring(4), 2, {0, 1, 2, 3}, f);
  const std::vector<int> hot{1}, inter{2};
  CHECK_THROWS_AS(place_cuts(c, part, hot, inter), std::runtime_error);
  const auto d = build_dqva(g, Bitstring(4), 1, {0, 2, 1, 3}, f);
  CHECK_THROWS_AS(place_cuts(d, part, hot, inter), std::invalid_argument);
}

TEST_CASE("reconstruction matches uncut simulation on random instances") {
  for (int cuts = 0; cuts <= 3; ++cuts) {
    for (int trial = 0; trial < 6; ++trial) {
      const int n = 6 + (trial * 3 + cuts) % 7;
      const auto inst = random_cut_instance(n, cuts, 1 + trial % 2, 1000 * cuts + trial);
      const auto t = run_cutting_trial(inst);
      CHECK(t.num_cuts == cuts);
      CHECK(t.num_terms == reconstruction_terms(cuts));
      CHECK(t.tv <= 1e-9);
      CHECK(t.max_abs <= 1e-9);
      CHECK(t.pre_clamp_min >= -1e-10);
      CHECK(t.expectation_error <= 1e-9);
    }
  }
}

TEST_CASE("linear combination preparations match direct preparation") {
  const auto inst = random_cut_instance(9, 2, 2, 77);
  const Fragment* receiver = nullptr;
  for (const auto& f : inst.cut.fragments)
    if (!f.cut_inputs.empty()) receiver = &f;
  REQUIRE(receiver != nullptr);
  const FragmentData data = evaluate_fragment(*receiver, inst.theta);
  std::vector<PauliBasis> meas;
  std::vector<PrepState> prep;
  for (std::size_t v = 0; v < receiver->num_variants(); ++v) {
    receiver->decode_variant(v, meas, prep);
    const auto direct = fragment_probabilities(*receiver, inst.theta, prep, meas);
    CHECK(max_abs_difference(direct, data.variants[v]) <= 1e-12);
  }
}

TEST_CASE("reconstruct rejects incomplete data") {
  const auto inst = random_cut_instance(8, 1, 1, 5);
  auto data = evaluate_fragments(inst.cut, inst.theta);
  data[0].variants.pop_back();
  CHECK_THROWS_AS(reconstruct(data, inst.cut), std::invalid_argument);
  data.pop_back();
  CHECK_THROWS_AS(reconstruct(data, inst.cut), std::invalid_argument);
}

TEST_CASE("zero cuts factorize") {
  const auto inst = random_cut_instance(10, 0, 2, 3);
  const auto data = evaluate_fragments(inst.cut, inst.theta);
  const auto joint = reconstruct(data, inst.cut).distribution;
  const auto& f0 = inst.cut.fragments[0];
  const auto& f1 = inst.cut.fragments[1];
  for (std::uint64_t x0 = 0; x0 < data[0].variants[0].size(); ++x0) {
    for (std::uint64_t x1 = 0; x1 < data[1].variants[0].size(); ++x1) {
      std::uint64_t x = 0;
      for (int q = 0; q < f0.num_qubits(); ++q)
        if ((x0 >> q) & 1U) x |= std::uint64_t{1} << f0.qubits[q].origin;
      for (int q = 0; q < f1.num_qubits(); ++q)
        if ((x1 >> q) & 1U) x |= std::uint64_t{1} << f1.qubits[q].origin;
      CHECK(std::abs(joint[x] - data[0].variants[0][x0] * data[1].variants[0][x1]) <= 1e-9);
    }
  }
}
