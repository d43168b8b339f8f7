#include "netabs/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "netabs/rng.hpp"

namespace netabs {

namespace {

std::string edge_str(int i, int j) {
  return "{" + std::to_string(i) + ", " + std::to_string(j) + "}";
}

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw invalid_input("graph needs at least one node");
  for (Edge& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i == e.j)
      throw invalid_input("self-loop at node " + std::to_string(e.i));
    if (e.i < 0 || e.j >= n_)
      throw invalid_input("link " + edge_str(e.i, e.j) +
                          " out of range for n = " + std::to_string(n_));
    if (!std::isfinite(e.w) || e.w <= 0.0)
      throw invalid_input("link " + edge_str(e.i, e.j) +
                          " needs a positive finite weight");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw invalid_input("duplicate link " +
                          edge_str(edges_[k].i, edges_[k].j));
  }
}

Eigen::MatrixXd WeightedGraph::laplacian() const {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    L(e.i, e.i) += e.w;
    L(e.j, e.j) += e.w;
    L(e.i, e.j) -= e.w;
    L(e.j, e.i) -= e.w;
  }
  return L;
}

Eigen::MatrixXd WeightedGraph::adjacency() const {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_);
  for (const Edge& e : edges_) {
    A(e.i, e.j) = e.w;
    A(e.j, e.i) = e.w;
  }
  return A;
}

Eigen::VectorXd WeightedGraph::degrees() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_);
  for (const Edge& e : edges_) {
    d[e.i] += e.w;
    d[e.j] += e.w;
  }
  return d;
}

bool WeightedGraph::is_connected() const {
  if (n_ == 1) return true;
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
  }
  return reached == n_;
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

int WeightedGraph::sparsity_l0() const { return 2 * m(); }

int WeightedGraph::sparsity_s01() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

WeightedGraph WeightedGraph::scaled(double kappa) const {
  if (!std::isfinite(kappa) || kappa <= 0.0)
    throw invalid_input("scale factor must be positive and finite");
  std::vector<Edge> es = edges_;
  for (Edge& e : es) e.w *= kappa;
  return WeightedGraph(n_, std::move(es));
}

WeightedGraph from_gain_matrix(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw invalid_input("gain matrix must be square");
  const int n = static_cast<int>(K.rows());
  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  const double tol = 1e-12 * scale;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    if (std::abs(K(i, i)) > tol)
      throw invalid_input("gain matrix has a nonzero diagonal entry at " +
                          std::to_string(i));
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(K(i, j) - K(j, i)) > tol)
        throw invalid_input("gain matrix is not symmetric at " +
                            edge_str(i, j));
      const double w = 0.5 * (K(i, j) + K(j, i));
      if (w < -tol)
        throw invalid_input("gain matrix has a negative entry at " +
                            edge_str(i, j));
      if (w > tol) edges.push_back({i, j, w});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

Eigen::MatrixXd gain_matrix(const WeightedGraph& g) { return g.adjacency(); }

WeightedGraph complete_graph(int n, double w) {
  if (n < 2) throw invalid_input("complete graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph path_graph(int n, double w) {
  if (n < 2) throw invalid_input("path graph needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph cycle_graph(int n, double w) {
  if (n < 3) throw invalid_input("cycle graph needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  edges.push_back({0, n - 1, w});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph star_graph(int n, double w) {
  if (n < 2) throw invalid_input("star graph needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i, w});
  return WeightedGraph(n, std::move(edges));
}

namespace {

// Decodes pair index p in [0, n(n-1)/2) to {i, j}, i < j, lexicographic.
std::pair<int, int> pair_from_index(long long p, int n) {
  int i = 0;
  long long row = n - 1;
  while (p >= row) {
    p -= row;
    --row;
    ++i;
  }
  return {i, i + 1 + static_cast<int>(p)};
}

// m distinct unit-weight links drawn uniformly among nodes lo..lo+n-1.
std::vector<Edge> random_links(int n, int m, int lo, Rng& rng) {
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0 || m > pairs)
    throw invalid_input("cannot place " + std::to_string(m) +
                        " links among " + std::to_string(n) + " nodes");
  std::set<long long> chosen;
  while (static_cast<int>(chosen.size()) < m) {
    const long long p =
        std::min<long long>(pairs - 1,
                            static_cast<long long>(rng.uniform() * pairs));
    chosen.insert(p);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (long long p : chosen) {
    auto [i, j] = pair_from_index(p, n);
    edges.push_back({lo + i, lo + j, 1.0});
  }
  return edges;
}

}  // namespace

WeightedGraph gnm_random(int n, int m, std::uint64_t seed) {
  if (n < 2) throw invalid_input("random graph needs n >= 2");
  Rng rng(mix64(seed));
  return WeightedGraph(n, random_links(n, m, 0, rng));
}

WeightedGraph two_component_cut(int half, int links, std::uint64_t seed) {
  if (half < 2) throw invalid_input("block size must be >= 2");
  Rng rng(mix64(seed));
  std::vector<Edge> edges = random_links(half, links, 0, rng);
  std::vector<Edge> right = random_links(half, links, half, rng);
  edges.insert(edges.end(), right.begin(), right.end());
  const int u = std::min(half - 1, static_cast<int>(rng.uniform() * half));
  const int v = std::min(half - 1, static_cast<int>(rng.uniform() * half));
  edges.push_back({u, half + v, 1.0});
  return WeightedGraph(2 * half, std::move(edges));
}

WeightedGraph exp_decay(int n, double c, double gamma) {
  if (n < 2) throw invalid_input("exp-decay graph needs n >= 2");
  if (!(c > 0.0) || !std::isfinite(c))
    throw invalid_input("coupling scale c must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw invalid_input("decay rate must be nonnegative");
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      edges.push_back({i, j, c * std::exp(-gamma * (j - i))});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph proximity(int n, double side, double radius,
                        std::uint64_t seed) {
  if (n < 2) throw invalid_input("proximity graph needs n >= 2");
  if (!(side > 0.0) || !(radius > 0.0))
    throw invalid_input("side and radius must be positive");
  Rng rng(mix64(seed));
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = side * rng.uniform();
    y[i] = side * rng.uniform();
  }
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx * dx + dy * dy <= r2) edges.push_back({i, j, 1.0});
    }
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  int max_node = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank line
    if (first == "n") {
      long long count = -1;
      if (n >= 0 || !edges.empty() || !(ls >> count) || count < 1)
        throw invalid_input("bad header at line " + std::to_string(line_no));
      n = static_cast<int>(count);
      continue;
    }
    Edge e;
    double w = 1.0;
    try {
      e.i = std::stoi(first);
    } catch (const std::exception&) {
      throw invalid_input("bad node index at line " + std::to_string(line_no));
    }
    if (!(ls >> e.j))
      throw invalid_input("missing second endpoint at line " +
                          std::to_string(line_no));
    if (!(ls >> w)) {  // optional weight
      ls.clear();
      w = 1.0;
    }
    std::string extra;
    if (ls >> extra)
      throw invalid_input("trailing fields at line " + std::to_string(line_no));
    e.w = w;
    edges.push_back(e);
    max_node = std::max({max_node, e.i, e.j});
  }
  if (n < 0) n = max_node + 1;
  if (n < 1) throw invalid_input("edge list is empty and has no header");
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph read_edge_list(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw invalid_input("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  try {
    return parse_edge_list(buf.str());
  } catch (const invalid_input& e) {
    throw invalid_input(path + ": " + e.what());
  }
}

std::string format_edge_list(const WeightedGraph& g) {
  std::string out = "n " + std::to_string(g.n()) + "\n";
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%d\t%d\t%.17g\n", e.i, e.j, e.w);
    out += buf;
  }
  return out;
}

void write_edge_list(const WeightedGraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw invalid_input("cannot write " + path);
  f << format_edge_list(g);
  if (!f) throw invalid_input("write failed for " + path);
}

}  // namespace netabs
