#include <doctest.h>

#include <numbers>

#include "qdc/ansatz.hpp"
#include "qdc/simulator.hpp"

using namespace qdc;

namespace {

constexpr double kPi = std::numbers::pi;

// one local qubit that is both a cut input and a cut output
Fragment wire_fragment() {
  Fragment f;
  FragmentQubit q;
  q.origin = 0;
  q.cut_in = 0;
  q.cut_out = 1;
  f.qubits.push_back(q);
  f.cut_inputs = {0};
  f.cut_outputs = {0};
  f.circuit = OpCircuit(1, 0);
  return f;
}

}  // namespace

TEST_CASE("empty circuit") {
  const auto psi = simulate(OpCircuit(3, 0), {}, Bitstring(3));
  CHECK(std::abs(psi[0] - 1.0) < 1e-15);
}

TEST_CASE("isolated mixer at pi/2 flips the qubit") {
  const auto c = build_dqva(Graph(1, {}), Bitstring(1), 1, {0});
  const auto p = simulate(c, std::vector<double>{kPi / 2, 0.3}).probabilities();
  CHECK(p[1] == doctest::Approx(1.0));
}

TEST_CASE("single edge closed form") {
  const auto c = build_dqva(Graph(2, {{0, 1}}), Bitstring(2), 1, {0, 1});
  const auto p = simulate(c, std::vector<double>{kPi / 4, kPi / 4, 0.8}).probabilities();
  CHECK(p.probability(Bitstring::from_string("10")) == doctest::Approx(0.5));
  CHECK(p.probability(Bitstring::from_string("00")) == doctest::Approx(0.25));
  CHECK(p.probability(Bitstring::from_string("01")) == doctest::Approx(0.25));
  CHECK(p.probability(Bitstring::from_string("11")) == doctest::Approx(0.0));
}

TEST_CASE("bit order") {
  CHECK(Bitstring::from_string("100").to_index() == 1);
  CHECK(Bitstring::from_index(4, 3).to_string() == "001");
}

TEST_CASE("expected hamming weight") {
  Distribution point(3);
  point[0] = 1.0;
  CHECK(expectation_hamming(point) == 0.0);
  CHECK(expectation_hamming(Distribution(2, {0.5, 0.0, 0.0, 0.5})) == doctest::Approx(1.0));
  CHECK(expectation_hamming(Distribution(2, {0.25, 0.25, 0.25, 0.25})) == doctest::Approx(1.0));
}

TEST_CASE("fragment probabilities on a bare wire") {
  const Fragment f = wire_fragment();
  auto run = [&](PrepState prep, PauliBasis meas) {
    return fragment_probabilities(f, {}, std::vector<PrepState>{prep}, std::vector<PauliBasis>{meas});
  };
  CHECK(run(PrepState::kZ1, PauliBasis::kZ)[1] == doctest::Approx(1.0));
  CHECK(run(PrepState::kX0, PauliBasis::kX)[0] == doctest::Approx(1.0));
  CHECK(run(PrepState::kX1, PauliBasis::kX)[1] == doctest::Approx(1.0));
  CHECK(run(PrepState::kY0, PauliBasis::kY)[0] == doctest::Approx(1.0));
  CHECK(run(PrepState::kY1, PauliBasis::kY)[1] == doctest::Approx(1.0));
  const auto u = run(PrepState::kZ0, PauliBasis::kX);
  CHECK(u[0] == doctest::Approx(0.5));
  CHECK(u[1] == doctest::Approx(0.5));
  CHECK_THROWS(fragment_probabilities(f, {}, {}, std::vector<PauliBasis>{PauliBasis::kZ}));
}

TEST_CASE("norm is preserved and simulation is repeatable") {
  const Graph g = erdos_renyi(10, 0.3, 2);
  const auto c = build_dqva(g, Bitstring(10), 3, identity_permutation(10));
  std::vector<double> theta(c.num_free());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = 0.37 * static_cast<double>(i + 1);
  const auto a = simulate(c, theta);
  const auto b = simulate(c, theta);
  CHECK(std::abs(a.norm_squared() - 1.0) <= 1e-10);
  for (std::size_t i = 0; i < a.dim(); ++i) CHECK(a[i] == b[i]);
  CHECK_THROWS_AS(simulate(c, std::vector<double>(theta.size() + 1)), std::invalid_argument);
}

TEST_CASE("distribution helpers") {
  const Distribution p(2, {0.1, 0.4, 0.4, 0.1});
  const Distribution q(2, {0.4, 0.1, 0.1, 0.4});
  CHECK(total_variation(p, q) == doctest::Approx(0.6));
  CHECK(max_abs_difference(p, q) == doctest::Approx(0.3));
  const auto top = p.top_k(2);
  CHECK(top[0].first.to_string() == "10");
  CHECK(top[1].first.to_string() == "01");
  const auto s = sample_distribution(p, 20000, 4);
  CHECK(s.total() == doctest::Approx(1.0));
  CHECK(std::abs(s[1] - 0.4) < 0.02);
  CHECK(sample_distribution(p, 100, 9).values() == sample_distribution(p, 100, 9).values());
}
