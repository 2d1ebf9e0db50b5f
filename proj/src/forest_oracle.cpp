#include "fqw/forest_oracle.hpp"

#include <cmath>
#include <numeric>

#include "fqw/errors.hpp"

namespace fqw {

namespace {

constexpr int kMaxEdges = 24;  // 2^|E| enumeration guard

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // returns false if x and y were already connected (the edge closes a cycle)
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[x] = y;
    return true;
  }
};

// Component structure of one edge subset, or acyclic=false if any ordinary
// edge closes a cycle (no component of a valid member may contain one).
struct Components {
  bool acyclic = true;
  std::vector<int> root;        // per vertex
  std::vector<int> loop_count;  // per root
};

Components classify(const PointedDual& pd, std::uint32_t mask) {
  const int n = pd.vertex_count();
  Components comp;
  UnionFind uf(n);
  for (int e = 0; e < pd.edge_count(); ++e) {
    if (!(mask >> e & 1) || pd.edges[e].loop) continue;
    if (!uf.unite(pd.edges[e].u, pd.edges[e].v)) {
      comp.acyclic = false;
      return comp;
    }
  }
  comp.root.resize(n);
  comp.loop_count.assign(n, 0);
  for (int v = 0; v < n; ++v) comp.root[v] = uf.find(v);
  for (int e = 0; e < pd.edge_count(); ++e)
    if ((mask >> e & 1) && pd.edges[e].loop)
      comp.loop_count[uf.find(pd.edges[e].u)] += 1;
  return comp;
}

}  // namespace

PointedDual pointed_dual(const DualGraph& dual, const Coin& coin) {
  const auto external = dual.external_faces();
  if (external.size() != 1)
    throw ValidationError("the pointed dual requires exactly one external face");
  PointedDual pd;
  pd.vertices = dual.internal_faces();
  pd.sink_face = external[0];
  pd.vertices.push_back(pd.sink_face);
  const int n = pd.vertex_count();

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int m = dual.multiplicity[pd.vertices[i]][pd.vertices[j]];
      if (m > 0)
        pd.edges.push_back({i, j, false, m, -2.0 * coin.d * m});
    }
  for (int i = 0; i + 1 < n; ++i) {
    // deg_{G*}(f) = |f|_G, the row sum of the multiplicity table
    int deg = dual.faces[pd.vertices[i]].length();
    pd.edges.push_back({i, i, true, 1, 2.0 * (1.0 + coin.d) * deg});
  }
  if (pd.edge_count() > kMaxEdges)
    throw ValidationError("pointed dual has too many edges for exhaustive enumeration");
  return pd;
}

double subgraph_weight(const PointedDual& pd, std::uint32_t mask) {
  double w = 1.0;
  for (int e = 0; e < pd.edge_count(); ++e)
    if (mask >> e & 1) w *= pd.edges[e].weight;
  return w;
}

std::vector<std::uint32_t> enumerate_family_h1(const PointedDual& pd) {
  const int sink = pd.vertex_count() - 1;
  std::vector<std::uint32_t> members;
  for (std::uint32_t mask = 0; mask < (1u << pd.edge_count()); ++mask) {
    Components comp = classify(pd, mask);
    if (!comp.acyclic) continue;
    bool ok = true;
    for (int v = 0; v < pd.vertex_count() && ok; ++v) {
      if (comp.root[v] != v) continue;
      int want = (v == comp.root[sink]) ? 0 : 1;
      ok = comp.loop_count[v] == want;
    }
    if (ok) members.push_back(mask);
  }
  return members;
}

std::vector<std::uint32_t> enumerate_family_h2(const PointedDual& pd, int f, int g) {
  const int sink = pd.vertex_count() - 1;
  if (f < 0 || f >= sink || g < 0 || g >= sink)
    throw ValidationError("H2 faces must be internal");
  std::vector<std::uint32_t> members;
  for (std::uint32_t mask = 0; mask < (1u << pd.edge_count()); ++mask) {
    Components comp = classify(pd, mask);
    if (!comp.acyclic) continue;
    if (comp.root[f] != comp.root[g] || comp.root[f] == comp.root[sink]) continue;
    bool ok = true;
    for (int v = 0; v < pd.vertex_count() && ok; ++v) {
      if (comp.root[v] != v) continue;
      int want = (v == comp.root[sink] || v == comp.root[f]) ? 0 : 1;
      ok = comp.loop_count[v] == want;
    }
    if (ok) members.push_back(mask);
  }
  return members;
}

double iota1(const PointedDual& pd) {
  double total = 0.0;
  for (auto mask : enumerate_family_h1(pd)) total += subgraph_weight(pd, mask);
  return total;
}

double iota2(const PointedDual& pd, int f, int g) {
  double total = 0.0;
  for (auto mask : enumerate_family_h2(pd, f, g)) total += subgraph_weight(pd, mask);
  return total;
}

Eigen::MatrixXd gram_inverse_combinatorial(const PointedDual& pd) {
  const int p = pd.vertex_count() - 1;
  const double denom = iota1(pd);
  if (denom == 0.0)
    throw ValidationError("iota1 vanishes for this coin; the ratio is undefined");
  Eigen::MatrixXd inv(p, p);
  for (int f = 0; f < p; ++f)
    for (int g = f; g < p; ++g)
      inv(f, g) = inv(g, f) = iota2(pd, f, g) / denom;
  return inv;
}

}  // namespace fqw
