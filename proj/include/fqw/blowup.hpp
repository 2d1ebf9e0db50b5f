#pragma once

#include <string>
#include <vector>

#include "fqw/rotation_graph.hpp"

namespace fqw {

/// The 2-in/2-out digraph obtained by replacing every vertex u with a
/// directed island cycle over its rotation slots and joining islands by one
/// bridge per original arc.
///
/// Blow-up vertices are (u, slot) pairs, numbered contiguously per vertex.
/// The arc id space of A^BU puts island arcs first, then bridges:
///   island arc k  (k < island_arc_count): from blow-up vertex k to the next
///                 slot on the same island,
///   bridge arc island_arc_count + a: the blow-up image of original arc a.
/// Tails are not materialized; each boundary blow-up vertex keeps a quay
/// (the island arc pair around it) and an implicit pier for the tail.
class BlowUpGraph {
public:
  explicit BlowUpGraph(RotationGraph g);

  const RotationGraph& base() const { return base_; }

  int bu_vertex_count() const { return n_bu_; }
  int island_arc_count() const { return n_bu_; }  // one island arc per vertex
  int bridge_count() const { return base_.arc_count(); }
  int arc_count() const { return n_bu_ + bridge_count(); }

  bool is_island_arc(int e) const { return e < n_bu_; }
  bool is_bridge_arc(int e) const { return e >= n_bu_; }
  int bridge_arc(int original_arc) const { return n_bu_ + original_arc; }
  /// Original arc behind a bridge arc.
  int original_arc(int e) const { return e - n_bu_; }

  int bu_vertex(int u, int slot) const { return island_start_[u] + slot; }
  int vertex_of(int bu) const { return vertex_of_[bu]; }
  int slot_of(int bu) const { return bu - island_start_[vertex_of_[bu]]; }
  int island_size(int u) const { return base_.rotation_size(u); }

  /// Island arc leaving / entering a blow-up vertex.
  int island_arc_from(int bu) const { return bu; }
  int island_arc_into(int bu) const;

  int arc_origin(int e) const;
  int arc_terminus(int e) const;

  struct Quay {
    int vertex;   // boundary vertex in the base graph
    int bu;       // boundary blow-up vertex (u, tail slot)
    int xi_out;   // island arc ending at bu
    int xi_in;    // island arc starting at bu
  };
  /// Indexed by tail id (boundary order of the base graph).
  const std::vector<Quay>& quays() const { return quays_; }
  /// Quay of a boundary blow-up vertex, -1 if bu is not one.
  int quay_of_bu(int bu) const { return quay_of_bu_[bu]; }

  std::string arc_description(int e) const;
  std::string bu_vertex_name(int bu) const;

private:
  RotationGraph base_;
  int n_bu_ = 0;
  std::vector<int> island_start_;  // per vertex
  std::vector<int> vertex_of_;     // per blow-up vertex
  std::vector<Quay> quays_;
  std::vector<int> quay_of_bu_;
};

BlowUpGraph blow_up(const RotationGraph& g);

/// The face as a closed directed walk in the blow-up graph: bridges
/// alternating with island runs, quay pairs split into both arcs. External
/// walks start at the first quay's xi_in, internal walks at bridge 0.
std::vector<int> face_arcs(const BlowUpGraph& bu, const FacialWalk& f);

}  // namespace fqw
