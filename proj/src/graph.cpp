#include "netcoh/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace netcoh {

Graph build_graph(int n, std::vector<std::pair<int, int>> edges,
                  std::string label) {
  if (n < 1) throw ValidationError("graph must have at least one node");
  for (auto& [u, v] : edges) {
    if (u == v)
      throw ValidationError("self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("edge endpoint out of range: (" +
                            std::to_string(u) + "," + std::to_string(v) +
                            ") with N=" + std::to_string(n));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw ValidationError("duplicate edge in input");
  Graph g;
  g.num_nodes = n;
  g.edges = std::move(edges);
  g.label = std::move(label);
  return g;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.num_nodes, g.num_nodes);
  for (const auto& [u, v] : g.edges) {
    L(u, u) += 1.0;
    L(v, v) += 1.0;
    L(u, v) -= 1.0;
    L(v, u) -= 1.0;
  }
  return L;
}

std::vector<std::vector<int>> adjacency_list(const Graph& g) {
  std::vector<std::vector<int>> adj(g.num_nodes);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  if (source < 0 || source >= g.num_nodes)
    throw ValidationError("BFS source out of range");
  auto adj = adjacency_list(g);
  std::vector<int> dist(g.num_nodes, -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[u])
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.num_nodes << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_edge_list(std::istream& in, std::string label) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw ValidationError("edge list: bad header line");
  if (m < 0) throw ValidationError("edge list: negative edge count");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(in >> u >> v))
      throw ValidationError("edge list: expected " + std::to_string(m) +
                            " edges, got " + std::to_string(i));
    if (u >= v)
      throw ValidationError("edge list: edges must satisfy u < v, got " +
                            std::to_string(u) + " " + std::to_string(v));
    edges.emplace_back(u, v);
  }
  return build_graph(n, std::move(edges), std::move(label));
}

Graph parse_edge_list(const std::string& text, std::string label) {
  std::istringstream in(text);
  return parse_edge_list(in, std::move(label));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  return parse_edge_list(in, "file:" + path);
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << to_edge_list(g);
}

}  // namespace netcoh
