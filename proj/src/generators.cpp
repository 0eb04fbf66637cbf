#include "netcoh/generators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <queue>

namespace netcoh {

namespace {

std::int64_t env_int64(const char* name, std::int64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  long long parsed = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || parsed <= 0) return fallback;
  return parsed;
}

std::atomic<std::int64_t> g_max_generated{
    env_int64("NETCOH_MAX_NODES", 10'000'000)};
std::atomic<int> g_max_dense{
    static_cast<int>(env_int64("NETCOH_MAX_DENSE", 5000))};

void check_generation_cap(std::int64_t n, const std::string& what) {
  if (n > max_generated_nodes())
    throw ResourceError(what + " would have " + std::to_string(n) +
                        " nodes, above the cap of " +
                        std::to_string(max_generated_nodes()) +
                        " (raise NETCOH_MAX_NODES or --max-nodes)");
}

}  // namespace

std::int64_t max_generated_nodes() { return g_max_generated.load(); }
int max_dense_nodes() { return g_max_dense.load(); }
void set_max_generated_nodes(std::int64_t cap) { g_max_generated.store(cap); }
void set_max_dense_nodes(int cap) { g_max_dense.store(cap); }

FamilySpec tree_spec(int m, int g) { return {Family::TreeLike, m, g}; }
FamilySpec vicsek_spec(int v, int g) { return {Family::Vicsek, v, g}; }
FamilySpec ring_spec(int n) { return {Family::Ring, 0, n}; }
FamilySpec path_spec(int n) { return {Family::Path, 0, n}; }
FamilySpec torus_spec(int side) { return {Family::Torus2D, 0, side}; }

std::string spec_label(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::TreeLike:
      return "tree m=" + std::to_string(spec.param) +
             " g=" + std::to_string(spec.generation_or_size);
    case Family::Vicsek:
      return "vicsek v=" + std::to_string(spec.param) +
             " g=" + std::to_string(spec.generation_or_size);
    case Family::Ring:
      return "ring n=" + std::to_string(spec.generation_or_size);
    case Family::Path:
      return "path n=" + std::to_string(spec.generation_or_size);
    case Family::Torus2D:
      return "torus side=" + std::to_string(spec.generation_or_size);
  }
  return "unknown";
}

DimensionInfo analytic_dimensions(const FamilySpec& spec) {
  DimensionInfo info;
  switch (spec.family) {
    case Family::TreeLike:
      if (spec.param < 1) throw ValidationError("tree-like family needs m >= 1");
      info.d_f = std::log(spec.param + 2.0) / std::log(2.0);
      info.d_s = 2.0 * info.d_f / (info.d_f + 1.0);
      return info;
    case Family::Vicsek:
      if (spec.param < 2) throw ValidationError("vicsek family needs v >= 2");
      info.d_f = std::log(spec.param + 1.0) / std::log(3.0);
      info.d_s = 2.0 * info.d_f / (info.d_f + 1.0);
      return info;
    case Family::Ring:
    case Family::Path:
      info.d_f = info.d_s = 1.0;
      return info;
    case Family::Torus2D:
      info.d_f = info.d_s = 2.0;
      return info;
  }
  throw ValidationError("unknown family");
}

std::int64_t tree_like_node_count(int m, int g) {
  if (m < 1) throw ValidationError("tree-like family needs m >= 1");
  if (g < 0) throw ValidationError("generation must be >= 0");
  std::int64_t n = 1;
  for (int i = 0; i < g; ++i) {
    if (n > (std::int64_t{1} << 62) / (m + 2))
      throw ResourceError("tree-like node count overflows 64-bit range");
    n *= (m + 2);
  }
  return n + 1;
}

std::int64_t vicsek_node_count(int v, int g) {
  if (v < 2) throw ValidationError("vicsek family needs v >= 2");
  if (g < 1) throw ValidationError("vicsek generation must be >= 1");
  std::int64_t n = 1;
  for (int i = 0; i < g; ++i) {
    if (n > (std::int64_t{1} << 62) / (v + 1))
      throw ResourceError("vicsek node count overflows 64-bit range");
    n *= (v + 1);
  }
  return n;
}

Graph tree_like(int m, int g) {
  std::int64_t target = tree_like_node_count(m, g);
  check_generation_cap(target, "tree-like generation " + std::to_string(g));
  int n = 2;
  std::vector<std::pair<int, int>> edges{{0, 1}};
  for (int iter = 0; iter < g; ++iter) {
    // edges is kept canonical between iterations so fresh-label assignment
    // is deterministic.
    std::vector<std::pair<int, int>> next;
    next.reserve(edges.size() * (m + 2));
    int fresh = n;
    for (const auto& [u, v] : edges) {
      int mid = fresh++;
      next.emplace_back(std::min(u, mid), std::max(u, mid));
      next.emplace_back(std::min(v, mid), std::max(v, mid));
      for (int leaf = 0; leaf < m; ++leaf) {
        next.emplace_back(mid, fresh);
        ++fresh;
      }
    }
    n = fresh;
    std::sort(next.begin(), next.end());
    edges = std::move(next);
  }
  return build_graph(n, std::move(edges), spec_label(tree_spec(m, g)));
}

Graph vicsek(int v, int g) {
  std::int64_t target = vicsek_node_count(v, g);
  check_generation_cap(target, "vicsek generation " + std::to_string(g));
  // Generation 1: star with center 0; the corners are the v leaves.
  int n = v + 1;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> corners;
  for (int i = 1; i <= v; ++i) {
    edges.emplace_back(0, i);
    corners.push_back(i);
  }
  for (int gen = 2; gen <= g; ++gen) {
    const int block = n;
    // BFS distances from each attaching corner, needed to pick the new
    // corner (farthest old corner, smallest label on ties).
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    auto bfs_from = [&](int src) {
      std::vector<int> dist(n, -1);
      std::queue<int> q;
      dist[src] = 0;
      q.push(src);
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
    };

    std::vector<std::pair<int, int>> next;
    next.reserve(edges.size() * (v + 1) + v);
    for (int c = 0; c <= v; ++c) {
      const int off = c * block;
      for (const auto& [a, b] : edges) next.emplace_back(a + off, b + off);
    }
    std::vector<int> new_corners;
    new_corners.reserve(v);
    for (int i = 0; i < v; ++i) {
      const int attach = corners[i];
      const int off = (i + 1) * block;
      next.emplace_back(attach, attach + off);
      auto dist = bfs_from(attach);
      int best = -1;
      for (int cand : corners) {
        if (cand == attach) continue;
        if (best < 0 || dist[cand] > dist[best] ||
            (dist[cand] == dist[best] && cand < best))
          best = cand;
      }
      new_corners.push_back(best + off);
    }
    n = (v + 1) * block;
    for (auto& [a, b] : next)
      if (a > b) std::swap(a, b);
    std::sort(next.begin(), next.end());
    edges = std::move(next);
    corners = std::move(new_corners);
  }
  return build_graph(n, std::move(edges), spec_label(vicsek_spec(v, g)));
}

Graph ring(int n) {
  if (n < 3) throw ValidationError("ring needs n >= 3");
  check_generation_cap(n, "ring");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n);
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return build_graph(n, std::move(edges), spec_label(ring_spec(n)));
}

Graph path(int n) {
  if (n < 2) throw ValidationError("path needs n >= 2");
  check_generation_cap(n, "path");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return build_graph(n, std::move(edges), spec_label(path_spec(n)));
}

Graph torus2d(int side) {
  if (side < 2) throw ValidationError("torus needs side >= 2");
  std::int64_t n = std::int64_t{side} * side;
  check_generation_cap(n, "torus");
  // Node (r, c) -> r*side + c; edges wrap in both directions.  side = 2
  // would duplicate wrap edges, so collect through a set-like canonical pass.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(2 * n));
  auto id = [side](int r, int c) {
    return ((r + side) % side) * side + ((c + side) % side);
  };
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      int u = id(r, c);
      for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
        int w = id(r + dr, c + dc);
        if (u != w) edges.emplace_back(std::min(u, w), std::max(u, w));
      }
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return build_graph(static_cast<int>(n), std::move(edges),
                     spec_label(torus_spec(side)));
}

Graph generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::TreeLike:
      return tree_like(spec.param, spec.generation_or_size);
    case Family::Vicsek:
      return vicsek(spec.param, spec.generation_or_size);
    case Family::Ring:
      return ring(spec.generation_or_size);
    case Family::Path:
      return path(spec.generation_or_size);
    case Family::Torus2D:
      return torus2d(spec.generation_or_size);
  }
  throw ValidationError("unknown family");
}

}  // namespace netcoh
