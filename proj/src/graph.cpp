#include "qdc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qdc/random.hpp"

namespace qdc {

Graph::Graph(int num_nodes, std::vector<Edge> edges) : n_(num_nodes) {
  if (num_nodes < 0) throw std::invalid_argument("Graph: negative node count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw std::invalid_argument("Graph: edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("Graph: self-loop on node " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("Graph: duplicate edge");
  }
  edges_ = std::move(edges);
  adjacency_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  const auto& nb = adjacency_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || *it != Edge{u, v}) return -1;
  return static_cast<int>(it - edges_.begin());
}

std::uint64_t Graph::neighbor_mask(int v) const {
  if (n_ > 64) throw std::length_error("Graph::neighbor_mask: more than 64 nodes");
  std::uint64_t mask = 0;
  for (int u : adjacency_[v]) mask |= std::uint64_t{1} << u;
  return mask;
}

Graph Graph::induced(std::span<const int> nodes) const {
  std::vector<int> local(n_, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<int>(i);
  std::vector<Edge> sub;
  for (const auto& [u, v] : edges_) {
    if (local[u] >= 0 && local[v] >= 0) sub.emplace_back(local[u], local[v]);
  }
  return Graph(static_cast<int>(nodes.size()), std::move(sub));
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
  if (n > 2) edges.emplace_back(0, n - 1);
  return Graph(n, std::move(edges));
}

Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n <= 0 || d < 0) throw std::invalid_argument("random_regular: need n > 0 and d >= 0");
  if (d >= n) throw std::invalid_argument("random_regular: degree must be smaller than n");
  if ((static_cast<long long>(n) * d) % 2 != 0) {
    throw std::invalid_argument("random_regular: n*d must be even");
  }
  constexpr int kMaxAttempts = 100000;
  Rng rng(seed);
  std::vector<int> points(static_cast<std::size_t>(n) * d);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<int>(i) / d;
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i < points.size(); i += 2) {
      int u = points[i], v = points[i + 1];
      if (u == v) {
        simple = false;
        break;
      }
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!simple) continue;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
    return Graph(n, std::move(edges));
  }
  throw std::runtime_error("random_regular: no simple pairing found within retry budget");
}

Graph erdos_renyi(int n, double p_edge, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("erdos_renyi: negative node count");
  if (!(p_edge >= 0.0 && p_edge <= 1.0)) {
    throw std::invalid_argument("erdos_renyi: edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) < p_edge) edges.emplace_back(u, v);
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string body = strip_comment(line);
    if (is_blank(body)) continue;
    std::istringstream ss(body);
    long long a, b;
    if (!(ss >> a >> b)) {
      throw std::runtime_error("read_graph: malformed line " + std::to_string(line_no));
    }
    std::string rest;
    if (ss >> rest) throw std::runtime_error("read_graph: trailing data on line " + std::to_string(line_no));
    if (n < 0) {
      if (a < 0 || b < 0) throw std::runtime_error("read_graph: negative header values");
      n = a;
      m = b;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  if (n < 0) throw std::runtime_error("read_graph: missing header");
  if (static_cast<long long>(edges.size()) != m) {
    throw std::runtime_error("read_graph: header declares " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()));
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_graph_file: cannot open " + path.string());
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph_file(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_graph_file: cannot open " + path.string());
  write_graph(out, g);
  if (!out) throw std::runtime_error("write_graph_file: write failed for " + path.string());
}

Partition::Partition(const Graph& g, std::vector<Side> sides) : sides_(std::move(sides)) {
  if (static_cast<int>(sides_.size()) != g.num_nodes()) {
    throw std::invalid_argument("Partition: side vector length differs from node count");
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    (sides_[v] == Side::kA ? nodes_a_ : nodes_b_).push_back(v);
  }
  auto diff = static_cast<long>(nodes_a_.size()) - static_cast<long>(nodes_b_.size());
  if (diff > 1 || diff < -1) throw std::invalid_argument("Partition: bisection is not balanced");
  for (const auto& e : g.edges()) {
    if (sides_[e.first] != sides_[e.second]) crossing_.push_back(e);
  }
}

std::vector<int> CutClassification::all_cut() const {
  std::vector<int> out = cut_a;
  out.insert(out.end(), cut_b.begin(), cut_b.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Dense symmetric weight matrix; n is small enough (hundreds) for O(n^2) storage.
std::vector<double> weight_matrix(const Graph& g, const std::optional<EdgeWeights>& weights) {
  const int n = g.num_nodes();
  if (weights && weights->size() != g.num_edges()) {
    throw std::invalid_argument("edge weights: expected one weight per edge");
  }
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    double wt = weights ? (*weights)[i] : 1.0;
    if (!(wt >= 0.0)) throw std::invalid_argument("edge weights: must be non-negative");
    w[static_cast<std::size_t>(u) * n + v] = wt;
    w[static_cast<std::size_t>(v) * n + u] = wt;
  }
  return w;
}

std::vector<Side> random_balanced_sides(int n, Rng& rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  int size_a = n / 2;
  if (n % 2 == 1 && (rng() & 1U)) size_a += 1;
  std::vector<Side> sides(n, Side::kB);
  for (int i = 0; i < size_a; ++i) sides[order[i]] = Side::kA;
  return sides;
}

constexpr double kGainEps = 1e-12;

}  // namespace

Partition random_bisection(const Graph& g, std::uint64_t seed) {
  Rng rng(seed);
  return Partition(g, random_balanced_sides(g.num_nodes(), rng));
}

double crossing_weight(const Graph& g, const Partition& part, const std::optional<EdgeWeights>& weights) {
  double total = 0.0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [u, v] = g.edges()[i];
    if (part.side(u) != part.side(v)) total += weights ? (*weights)[i] : 1.0;
  }
  return total;
}

double best_swap_gain(const Graph& g, const Partition& part, const std::optional<EdgeWeights>& weights) {
  const int n = g.num_nodes();
  auto w = weight_matrix(g, weights);
  std::vector<double> d(n, 0.0);
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) {
      double wt = w[static_cast<std::size_t>(v) * n + u];
      d[v] += part.side(u) != part.side(v) ? wt : -wt;
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (int a : part.nodes(Side::kA))
    for (int b : part.nodes(Side::kB))
      best = std::max(best, d[a] + d[b] - 2.0 * w[static_cast<std::size_t>(a) * n + b]);
  return best;
}

Partition kernighan_lin_bisect(const Graph& g, std::uint64_t seed, const std::optional<EdgeWeights>& weights) {
  const int n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("kernighan_lin_bisect: need at least 2 nodes");
  const auto w = weight_matrix(g, weights);
  auto weight = [&](int u, int v) { return w[static_cast<std::size_t>(u) * n + v]; };

  Rng rng(seed);
  std::vector<Side> sides = random_balanced_sides(n, rng);

  constexpr int kMaxPasses = 1000;
  std::vector<double> d(n);
  std::vector<char> locked(n);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    // D(v) = external - internal cost
    for (int v = 0; v < n; ++v) {
      d[v] = 0.0;
      for (int u : g.neighbors(v)) d[v] += sides[u] != sides[v] ? weight(v, u) : -weight(v, u);
    }
    std::fill(locked.begin(), locked.end(), 0);
    std::vector<int> a_nodes, b_nodes;
    for (int v = 0; v < n; ++v) (sides[v] == Side::kA ? a_nodes : b_nodes).push_back(v);
    const std::size_t steps = std::min(a_nodes.size(), b_nodes.size());

    std::vector<std::pair<int, int>> swaps;
    std::vector<double> cumulative;
    double running = 0.0;
    for (std::size_t step = 0; step < steps; ++step) {
      int best_a = -1, best_b = -1;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (int a : a_nodes) {
        if (locked[a]) continue;
        for (int b : b_nodes) {
          if (locked[b]) continue;
          double gain = d[a] + d[b] - 2.0 * weight(a, b);
          if (gain > best_gain + kGainEps) {
            best_gain = gain;
            best_a = a;
            best_b = b;
          }
        }
      }
      locked[best_a] = locked[best_b] = 1;
      swaps.emplace_back(best_a, best_b);
      running += best_gain;
      cumulative.push_back(running);
      for (int x = 0; x < n; ++x) {
        if (locked[x]) continue;
        if (sides[x] == Side::kA) {
          d[x] += 2.0 * weight(x, best_a) - 2.0 * weight(x, best_b);
        } else {
          d[x] += 2.0 * weight(x, best_b) - 2.0 * weight(x, best_a);
        }
      }
    }

    std::size_t best_k = 0;
    double best_total = 0.0;
    for (std::size_t k = 0; k < cumulative.size(); ++k) {
      if (cumulative[k] > best_total + kGainEps) {
        best_total = cumulative[k];
        best_k = k + 1;
      }
    }
    if (best_k == 0) break;
    for (std::size_t k = 0; k < best_k; ++k) {
      std::swap(sides[swaps[k].first], sides[swaps[k].second]);
    }
  }
  return Partition(g, std::move(sides));
}

CutClassification classify_nodes(const Graph& g, const Partition& part) {
  if (static_cast<int>(part.sides().size()) != g.num_nodes()) {
    throw std::invalid_argument("classify_nodes: partition does not match graph");
  }
  CutClassification out;
  for (int v = 0; v < g.num_nodes(); ++v) {
    Side s = part.side(v);
    bool cut = std::any_of(g.neighbors(v).begin(), g.neighbors(v).end(),
                           [&](int u) { return part.side(u) != s; });
    if (s == Side::kA) {
      (cut ? out.cut_a : out.uncut_a).push_back(v);
    } else {
      (cut ? out.cut_b : out.uncut_b).push_back(v);
    }
  }
  return out;
}

}  // namespace qdc
