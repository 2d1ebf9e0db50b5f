#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fqw/coin.hpp"
#include "fqw/rotation_graph.hpp"

namespace fqw {

/// The pointed dual: multi-edges of the dual collapsed to simple weighted
/// edges, original self-loops dropped, and one potential self-loop added at
/// every vertex except the sink f*. Vertices are the internal faces in
/// canonical order followed by the sink.
struct PointedDual {
  struct Edge {
    int u;         // indices into `vertices`
    int v;         // u == v for potential self-loops
    bool loop;
    int multiplicity;  // m_e (1 for loops)
    double weight;     // -2d m_e, or 2(1+d) deg for loops
  };

  std::vector<int> vertices;  // face ids; sink last
  int sink_face = -1;
  std::vector<Edge> edges;    // ordinary edges first, then loops

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
};

PointedDual pointed_dual(const DualGraph& dual, const Coin& coin);

double subgraph_weight(const PointedDual& pd, std::uint32_t edge_mask);

/// All spanning subgraphs whose f*-component is a tree and whose other
/// components are potential trees (exactly one loop each, a tree once the
/// loop is removed). Self-loops count as odd cycles, isolated vertices as
/// trees. Exhaustive over all 2^|E| edge subsets.
std::vector<std::uint32_t> enumerate_family_h1(const PointedDual& pd);

/// Spanning subgraphs with exactly two tree components, one holding the sink
/// and one holding both f and g (f == g allowed); all other components are
/// potential trees. f and g index internal faces (positions in pd.vertices).
std::vector<std::uint32_t> enumerate_family_h2(const PointedDual& pd, int f, int g);

double iota1(const PointedDual& pd);
double iota2(const PointedDual& pd, int f, int g);

/// M^{-1}[f][g] = iota2(f,g) / iota1 over the internal faces.
Eigen::MatrixXd gram_inverse_combinatorial(const PointedDual& pd);

}  // namespace fqw
