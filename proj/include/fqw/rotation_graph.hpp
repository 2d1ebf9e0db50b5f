#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fqw {

/// Rotation entry marking the tail slot of a boundary vertex.
inline constexpr int kTailSlot = -1;

struct Arc {
  int from = 0;
  int to = 0;
};

/// A finite connected simple symmetric digraph together with a boundary set
/// and a rotation system. The rotation at a vertex u is a cyclic list over
/// the extended neighborhood: the neighbors of u plus exactly one tail slot
/// iff u is a boundary vertex. Immutable after construction.
class RotationGraph {
public:
  /// Builds and validates a graph from per-vertex cyclic rotation lists.
  /// rotation[u] holds vertex indices (neighbors of u) and at most one
  /// kTailSlot entry; a tail slot makes u a boundary vertex.
  static RotationGraph from_rotations(std::vector<std::string> names,
                                      std::vector<std::vector<int>> rotations);

  /// Parses the line-oriented graph format:
  ///   vertex <id> : <n1> <n2> ... <nk>
  /// with `*` marking the tail slot and `#` starting a comment.
  static RotationGraph parse(std::string_view text);

  int vertex_count() const { return static_cast<int>(rotations_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int edge_count() const { return arc_count() / 2; }
  int boundary_count() const { return static_cast<int>(boundary_.size()); }
  int betti_number() const { return edge_count() - vertex_count() + 1; }

  const std::string& vertex_name(int v) const { return names_[v]; }
  /// Index of a named vertex, -1 if absent.
  int vertex_index(std::string_view name) const;
  bool is_boundary(int v) const { return tail_slot_[v] >= 0; }
  int degree(int v) const {
    return static_cast<int>(rotations_[v].size()) - (is_boundary(v) ? 1 : 0);
  }

  const std::vector<std::vector<int>>& rotations() const { return rotations_; }
  const std::vector<int>& rotation(int v) const { return rotations_[v]; }
  /// |Ñ_v| = deg(v) + [v is boundary]
  int rotation_size(int v) const { return static_cast<int>(rotations_[v].size()); }
  /// Position of `entry` (vertex index or kTailSlot) in rotation(v), -1 if absent.
  int slot_of(int v, int entry) const;
  /// Tail slot position in rotation(v), -1 for non-boundary vertices.
  int tail_slot(int v) const { return tail_slot_[v]; }

  Arc arc(int a) const { return arcs_[a]; }
  /// Canonical arc index of (from -> to), -1 if no such edge.
  int arc_index(int from, int to) const;
  int reverse_arc(int a) const { return arc_index(arcs_[a].to, arcs_[a].from); }
  std::string arc_label(int a) const {
    return names_[arcs_[a].from] + "->" + names_[arcs_[a].to];
  }

  /// Boundary vertices in increasing index order; the position of a vertex
  /// in this list is its tail id, used to index inflow/outflow vectors.
  const std::vector<int>& boundary_vertices() const { return boundary_; }
  /// Tail id of vertex v, -1 if v carries no tail.
  int tail_of_vertex(int v) const { return tail_id_[v]; }

private:
  RotationGraph() = default;

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_of_;
  std::vector<std::vector<int>> rotations_;
  std::vector<int> tail_slot_;  // per vertex, -1 if none
  std::vector<Arc> arcs_;       // sorted by (from, to)
  std::vector<int> arc_start_;  // per vertex: first arc with this origin
  std::vector<int> boundary_;   // boundary vertex indices, increasing
  std::vector<int> tail_id_;    // per vertex, -1 or position in boundary_
};

/// One orbit of the rotation-induced successor map on A ∪ δA⁺, canonically
/// rotated so bridge_arcs[0] is the smallest arc index in the orbit.
/// quay j sits immediately before bridge_arcs[quay_slots[j]] (cyclically);
/// the walk is external iff it crosses at least one quay.
struct FacialWalk {
  bool external = false;
  std::vector<int> bridge_arcs;    // e_0 .. e_{s-1}
  std::vector<int> quay_slots;     // strictly increasing, values in [0, s)
  std::vector<int> quay_vertices;  // boundary vertex visited at each quay

  int length() const { return static_cast<int>(bridge_arcs.size()); }  // |f|_G
  int quay_count() const { return static_cast<int>(quay_slots.size()); }
  /// δ_j = arcs between quay j and quay j+1, cyclic.
  std::vector<int> gaps() const;
};

/// Complete orbit decomposition; faces ordered by their smallest arc.
std::vector<FacialWalk> trace_faces(const RotationGraph& g);

/// Genus of the closed orientable surface underlying the rotation,
/// g = (b1 - r + 1) / 2. Tail slots do not affect the orbit count.
int genus(const RotationGraph& g);

/// Faces as dual vertices with shared-edge multiplicities
/// m[f][g] = #([f] ∩ [ḡ]). Row sums equal face lengths.
struct DualGraph {
  std::vector<FacialWalk> faces;
  std::vector<std::vector<int>> multiplicity;
  std::vector<int> face_of_arc;  // arc id -> face id

  int face_count() const { return static_cast<int>(faces.size()); }
  std::vector<int> internal_faces() const;
  std::vector<int> external_faces() const;
};

DualGraph dual_graph(const RotationGraph& g, std::vector<FacialWalk> faces);

/// Returns a copy of g with a tail inserted at every vertex the given face
/// visits, placed inside the face's turn so the face becomes external with
/// one quay per visit. The face must visit distinct vertices.
RotationGraph attach_tails_along_face(const RotationGraph& g, const FacialWalk& face);

const std::vector<std::string>& builtin_graph_names();
RotationGraph builtin_graph(std::string_view name);
/// Built-in name, else a path to a graph file.
RotationGraph load_graph(const std::string& name_or_path);

}  // namespace fqw
