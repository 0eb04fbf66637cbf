#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "netcoh/errors.hpp"

namespace netcoh {

/// Undirected simple graph on dense 0-indexed node labels.
///
/// Edges are stored canonically: each pair (u, v) with u < v, the list
/// sorted lexicographically and free of duplicates.  Construction goes
/// through build_graph(), which validates and canonicalizes, so two graphs
/// with the same edge set compare equal member-by-member.
struct Graph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // canonical: u < v, sorted, unique
  std::string label;                       // provenance, e.g. "tree m=2 g=3"

  int num_edges() const { return static_cast<int>(edges.size()); }
};

/// Validate and canonicalize an edge list into a Graph.
/// Throws ValidationError on self-loops, duplicate edges, or endpoints >= n.
Graph build_graph(int n, std::vector<std::pair<int, int>> edges,
                  std::string label = "");

/// Dense graph Laplacian L = D - A: degree on the diagonal, -1 for each
/// edge, zero row sums.
Eigen::MatrixXd laplacian(const Graph& g);

/// Neighbor lists (each sorted ascending), useful for traversals.
std::vector<std::vector<int>> adjacency_list(const Graph& g);

/// True iff breadth-first traversal from node 0 reaches every node.
bool is_connected(const Graph& g);

/// BFS distances (edge counts) from a source node; -1 if unreachable.
std::vector<int> bfs_distances(const Graph& g, int source);

/// Interchange format: first line "N M", then M lines "u v" with u < v,
/// 0-indexed, newline-terminated.
std::string to_edge_list(const Graph& g);
Graph parse_edge_list(std::istream& in, std::string label = "");
Graph parse_edge_list(const std::string& text, std::string label = "");
Graph read_edge_list_file(const std::string& path);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace netcoh
