#include "qdc/classical_mis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qdc/random.hpp"

namespace qdc {

bool is_independent_set(const Graph& g, const Bitstring& b) {
  if (static_cast<int>(b.size()) != g.num_nodes()) {
    throw std::invalid_argument("is_independent_set: bitstring length " + std::to_string(b.size()) +
                                " does not match node count " + std::to_string(g.num_nodes()));
  }
  for (const auto& [u, v] : g.edges()) {
    if (b[u] && b[v]) return false;
  }
  return true;
}

namespace {

struct BruteForceSearch {
  int n;
  std::vector<std::uint64_t> nbr;
  std::uint64_t best_set = 0;
  int best_weight = -1;

  // `blocked` holds nodes adjacent to the current set.
  void search(int v, std::uint64_t set, int weight, std::uint64_t blocked) {
    if (v == n) {
      if (weight > best_weight) {
        best_weight = weight;
        best_set = set;
      }
      return;
    }
    std::uint64_t remaining = (n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1)) &
                              ~((std::uint64_t{1} << v) - 1) & ~blocked;
    if (weight + std::popcount(remaining) <= best_weight) return;
    search(v + 1, set, weight, blocked);
    if (!(blocked >> v & 1U)) {
      search(v + 1, set | (std::uint64_t{1} << v), weight + 1, blocked | nbr[v]);
    }
  }
};

struct RamseyResult {
  std::vector<int> clique;
  std::vector<int> independent;
};

class CliqueRemoval {
 public:
  explicit CliqueRemoval(const Graph& g) : n_(g.num_nodes()), adj_(static_cast<std::size_t>(n_) * n_, 0) {
    for (const auto& [u, v] : g.edges()) {
      adj_[idx(u, v)] = 1;
      adj_[idx(v, u)] = 1;
    }
  }

  std::vector<int> run() {
    std::vector<int> remaining(n_);
    for (int i = 0; i < n_; ++i) remaining[i] = i;
    std::vector<int> best;
    while (!remaining.empty()) {
      RamseyResult r = ramsey(remaining);
      if (r.independent.size() > best.size()) best = r.independent;
      std::vector<char> in_clique(n_, 0);
      for (int v : r.clique) in_clique[v] = 1;
      std::erase_if(remaining, [&](int v) { return in_clique[v] != 0; });
    }
    return best;
  }

 private:
  std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

  RamseyResult ramsey(const std::vector<int>& nodes) {
    if (nodes.empty()) return {};
    int pivot = -1, pivot_degree = -1;
    for (int v : nodes) {
      int deg = 0;
      for (int u : nodes) deg += adj_[idx(v, u)];
      if (deg > pivot_degree) {
        pivot_degree = deg;
        pivot = v;
      }
    }
    std::vector<int> nbrs, non_nbrs;
    for (int u : nodes) {
      if (u == pivot) continue;
      (adj_[idx(pivot, u)] ? nbrs : non_nbrs).push_back(u);
    }
    RamseyResult in_nbrs = ramsey(nbrs);
    RamseyResult in_non = ramsey(non_nbrs);

    RamseyResult out;
    in_nbrs.clique.push_back(pivot);
    out.clique = in_nbrs.clique.size() >= in_non.clique.size() ? std::move(in_nbrs.clique)
                                                               : std::move(in_non.clique);
    in_non.independent.push_back(pivot);
    out.independent = in_non.independent.size() >= in_nbrs.independent.size()
                          ? std::move(in_non.independent)
                          : std::move(in_nbrs.independent);
    return out;
  }

  int n_;
  std::vector<char> adj_;
};

}  // namespace

Bitstring brute_force_mis(const Graph& g, int max_nodes) {
  const int n = g.num_nodes();
  if (n > max_nodes || n > 64) {
    throw std::invalid_argument("brute_force_mis: " + std::to_string(n) + " nodes exceeds limit " +
                                std::to_string(std::min(max_nodes, 64)));
  }
  BruteForceSearch s{n, {}, 0, -1};
  s.nbr.resize(n);
  for (int v = 0; v < n; ++v) s.nbr[v] = g.neighbor_mask(v);
  s.search(0, 0, 0, 0);
  return Bitstring::from_index(s.best_set, n);
}

Bitstring boppana_halldorsson(const Graph& g) {
  Bitstring out(static_cast<std::size_t>(g.num_nodes()));
  for (int v : CliqueRemoval(g).run()) out.set(v);
  return out;
}

EdgeWeights biased_edge_weights(const Graph& g, const Bitstring& selected, double epsilon) {
  EdgeWeights w(g.num_edges(), 1.0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    if (selected[u] || selected[v]) w[i] = epsilon;
  }
  return w;
}

DivideAndConquerResult classical_divide_and_conquer(const Graph& g, int rounds, std::uint64_t seed,
                                                    double bias_epsilon) {
  if (rounds < 1) throw std::invalid_argument("classical_divide_and_conquer: rounds must be >= 1");
  const int n = g.num_nodes();
  DivideAndConquerResult result;
  Bitstring current(static_cast<std::size_t>(n));
  result.best = current;
  if (n < 2) {
    result.best = Bitstring::ones(static_cast<std::size_t>(n));
    result.trace.assign(rounds, n);
    result.crossing_edges.assign(rounds, 0);
    return result;
  }

  for (int r = 0; r < rounds; ++r) {
    std::optional<EdgeWeights> weights;
    if (r > 0) weights = biased_edge_weights(g, current, bias_epsilon);
    Partition part = kernighan_lin_bisect(g, derive_seed(seed, static_cast<std::uint64_t>(r)), weights);
    result.crossing_edges.push_back(static_cast<int>(part.num_crossing()));

    std::vector<char> blocked(n, 0);
    for (int v = 0; v < n; ++v) {
      if (!current[v]) continue;
      for (int u : g.neighbors(v)) blocked[u] = 1;
    }
    for (Side s : {Side::kA, Side::kB}) {
      std::vector<int> nodes;
      for (int v : part.nodes(s)) {
        if (!blocked[v] && !current[v]) nodes.push_back(v);
      }
      Bitstring local = boppana_halldorsson(g.induced(nodes));
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!local[i]) continue;
        int v = nodes[i];
        bool free = std::none_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                                 [&](int u) { return current[u]; });
        if (free) current.set(v);
      }
    }
    if (!is_independent_set(g, current)) {
      throw std::logic_error("classical_divide_and_conquer: merge produced an infeasible set");
    }
    if (hamming_weight(current) > hamming_weight(result.best)) result.best = current;
    result.trace.push_back(hamming_weight(result.best));
  }
  return result;
}

double bh_ratio(const Bitstring& dc, const Bitstring& bh) {
  const int denom = hamming_weight(bh);
  if (denom == 0) throw std::domain_error("bh_ratio: Boppana-Halldorsson set is empty");
  return static_cast<double>(hamming_weight(dc)) / denom;
}

}  // namespace qdc
