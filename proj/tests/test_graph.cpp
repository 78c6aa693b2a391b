#include <doctest.h>

#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "qdc/graph.hpp"

using namespace qdc;

namespace {

Graph two_triangles() { return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}); }

void check_simple(const Graph& g) {
  int degree_sum = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    degree_sum += g.degree(v);
    for (int u : g.neighbors(v)) {
      CHECK(u != v);
      CHECK(g.has_edge(u, v));
    }
  }
  CHECK(degree_sum == 2 * static_cast<int>(g.num_edges()));
}

}  // namespace

TEST_CASE("graph rejects self loops, duplicates and bad indices") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST_CASE("random regular graphs") {
  CHECK(random_regular(4, 3, 11) == complete_graph(4));
  CHECK_THROWS_AS(random_regular(3, 3, 1), std::invalid_argument);
  const Graph g = random_regular(10, 3, 7);
  CHECK(g.num_edges() == 15);
  for (int v = 0; v < 10; ++v) CHECK(g.degree(v) == 3);
  check_simple(g);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph h = random_regular(14, 3, seed);
    check_simple(h);
    for (int v = 0; v < 14; ++v) CHECK(h.degree(v) == 3);
  }
  CHECK(random_regular(12, 3, 5) == random_regular(12, 3, 5));
}

TEST_CASE("erdos renyi graphs") {
  CHECK(erdos_renyi(5, 0.0, 1).num_edges() == 0);
  CHECK(erdos_renyi(5, 1.0, 1) == complete_graph(5));
  const Graph g = erdos_renyi(100, 0.1, 3);
  const double mean = 4950 * 0.1, sd = std::sqrt(4950 * 0.1 * 0.9);
  CHECK(std::abs(static_cast<double>(g.num_edges()) - mean) <= 5 * sd);
  check_simple(g);
}

TEST_CASE("graph file round trip is byte stable") {
  const Graph g = random_regular(10, 3, 1);
  std::ostringstream a, b;
  write_graph(a, g);
  std::istringstream in(a.str());
  const Graph h = read_graph(in);
  CHECK(h == g);
  write_graph(b, h);
  CHECK(a.str() == b.str());
  std::istringstream commented("# header\n3 2\n0 1 # first\n\n1 2\n");
  CHECK(read_graph(commented) == path_graph(3));
  std::istringstream bad("3 2\n0 1\n");
  CHECK_THROWS(read_graph(bad));
}

TEST_CASE("kernighan lin on small fixtures") {
  const Graph c4 = cycle_graph(4);
  CHECK(oracle::min_bisection(c4) == 2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(kernighan_lin_bisect(c4, seed).num_crossing() == 2);

  const Graph tri = two_triangles();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Partition p = kernighan_lin_bisect(tri, seed);
    CHECK(p.num_crossing() == 0);
    CHECK(p.side(0) == p.side(1));
    CHECK(p.side(1) == p.side(2));
    CHECK(p.side(3) != p.side(0));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(kernighan_lin_bisect(complete_graph(4), seed).num_crossing() == 4);
}

TEST_CASE("kernighan lin output is balanced and locally optimal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 9 + static_cast<int>(seed % 4);
    const Graph g = erdos_renyi(n, 0.4, seed);
    const Partition p = kernighan_lin_bisect(g, seed);
    const auto a = static_cast<int>(p.nodes(Side::kA).size());
    const auto b = static_cast<int>(p.nodes(Side::kB).size());
    CHECK(std::abs(a - b) <= 1);
    CHECK(a + b == n);
    CHECK(best_swap_gain(g, p) <= 1e-12);
    CHECK(static_cast<int>(p.num_crossing()) >= oracle::min_bisection(g));
  }
}

TEST_CASE("kernighan lin beats random bisection on 3-regular graphs") {
  double kl = 0.0, rnd = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_regular(40, 3, seed);
    kl += static_cast<double>(kernighan_lin_bisect(g, seed).num_crossing());
    for (std::uint64_t r = 0; r < 100; ++r) rnd += static_cast<double>(random_bisection(g, 1000 * seed + r).num_crossing()) / 100;
  }
  CHECK(kl < rnd);
}

TEST_CASE("uniform weights give the same bisection as unweighted") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_regular(20, 3, seed);
    const Partition plain = kernighan_lin_bisect(g, seed);
    const Partition weighted = kernighan_lin_bisect(g, seed, EdgeWeights(g.num_edges(), 1.0));
    CHECK(plain == weighted);
  }
}

TEST_CASE("classify nodes") {
  const Graph path = path_graph(4);
  const Partition p(path, {Side::kA, Side::kA, Side::kB, Side::kB});
  const auto c = classify_nodes(path, p);
  CHECK(c.uncut_a == std::vector<int>{0});
  CHECK(c.cut_a == std::vector<int>{1});
  CHECK(c.cut_b == std::vector<int>{2});
  CHECK(c.uncut_b == std::vector<int>{3});
  CHECK(c.all_cut() == std::vector<int>{1, 2});

  const Graph tri = two_triangles();
  const Partition q(tri, {Side::kA, Side::kA, Side::kA, Side::kB, Side::kB, Side::kB});
  const auto d = classify_nodes(tri, q);
  CHECK(d.all_cut().empty());
  CHECK(d.uncut_a.size() == 3);
}

TEST_CASE("partition requires balance") {
  const Graph g = path_graph(4);
  CHECK_THROWS_AS(Partition(g, {Side::kA, Side::kA, Side::kA, Side::kB}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(g, {Side::kA, Side::kB}), std::invalid_argument);
  CHECK_NOTHROW(Partition(path_graph(5), {Side::kA, Side::kA, Side::kA, Side::kB, Side::kB}));
}

TEST_CASE("odd n bisections differ by one with the larger side from the seed") {
  const Graph g = cycle_graph(7);
  bool a_larger = false, b_larger = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Partition p = kernighan_lin_bisect(g, seed);
    const auto a = p.nodes(Side::kA).size(), b = p.nodes(Side::kB).size();
    CHECK(a + b == 7);
    a_larger = a_larger || a > b;
    b_larger = b_larger || b > a;
  }
  CHECK(a_larger);
  CHECK(b_larger);
}
