#pragma once

#include <cstdint>
#include <string>

#include "netcoh/graph.hpp"

namespace netcoh {

enum class Family { TreeLike, Vicsek, Ring, Path, Torus2D };

/// Which graph to build: a fractal family at a given generation, or a
/// baseline lattice of a given size.
///
///  - TreeLike(m): param = m >= 1, generation_or_size = g >= 0
///  - Vicsek(v):   param = v >= 2, generation_or_size = g >= 1
///  - Ring/Path:   generation_or_size = node count
///  - Torus2D:     generation_or_size = side length (N = side^2)
struct FamilySpec {
  Family family = Family::TreeLike;
  int param = 0;
  int generation_or_size = 0;
};

FamilySpec tree_spec(int m, int g);
FamilySpec vicsek_spec(int v, int g);
FamilySpec ring_spec(int n);
FamilySpec path_spec(int n);
FamilySpec torus_spec(int side);

/// Analytic fractal and spectral dimensions of a family.
/// For fractal families d_s = 2 d_f / (d_f + 1); for ring/path/torus the
/// two coincide with the integer lattice dimension.
struct DimensionInfo {
  double d_f = 0.0;
  double d_s = 0.0;
};

DimensionInfo analytic_dimensions(const FamilySpec& spec);

/// Node-count caps.  Generation refuses graphs larger than the generation
/// cap; dense eigensolves refuse matrices larger than the dense cap.
/// Defaults: 10^7 and 5000, overridable via the environment variables
/// NETCOH_MAX_NODES / NETCOH_MAX_DENSE and (in the CLI) via flags.
std::int64_t max_generated_nodes();
int max_dense_nodes();
void set_max_generated_nodes(std::int64_t cap);
void set_max_dense_nodes(int cap);

/// Closed-form node counts: (m+2)^g + 1 and (v+1)^g.
std::int64_t tree_like_node_count(int m, int g);
std::int64_t vicsek_node_count(int v, int g);

/// Tree-like fractal. Generation 0 is a single edge on two nodes; each
/// iteration replaces every edge (u,v) by a two-edge path through a fresh
/// midpoint and attaches m fresh leaves to that midpoint.  Deterministic
/// labeling: edges are processed in canonical order and fresh labels are
/// assigned sequentially, midpoint first, then its leaves.
Graph tree_like(int m, int g);

/// Vicsek fractal.  Generation 1 is the star K_{1,v} (center 0, corners
/// 1..v).  Generation g+1 places v translated copies of generation g around
/// the original and joins, for i = 1..v, corner i of the central copy to the
/// image of corner i inside copy i.  Copy c occupies the contiguous label
/// block [c*N_g, (c+1)*N_g); copy 0 is the center.  The corner of copy i in
/// the new generation is the image of the old corner farthest (BFS) from the
/// attaching corner, ties broken by smallest label.
Graph vicsek(int v, int g);

Graph ring(int n);
Graph path(int n);
Graph torus2d(int side);

/// Dispatch on FamilySpec.
Graph generate(const FamilySpec& spec);

/// Human-readable spec string used as graph label ("vicsek v=4 g=2").
std::string spec_label(const FamilySpec& spec);

}  // namespace netcoh
