#include "fqw/blowup.hpp"

#include "fqw/errors.hpp"

namespace fqw {

BlowUpGraph::BlowUpGraph(RotationGraph g) : base_(std::move(g)) {
  const int n = base_.vertex_count();
  island_start_.assign(n + 1, 0);
  for (int u = 0; u < n; ++u)
    island_start_[u + 1] = island_start_[u] + base_.rotation_size(u);
  n_bu_ = island_start_[n];
  vertex_of_.assign(n_bu_, 0);
  for (int u = 0; u < n; ++u)
    for (int s = 0; s < base_.rotation_size(u); ++s)
      vertex_of_[island_start_[u] + s] = u;

  quay_of_bu_.assign(n_bu_, -1);
  for (int v : base_.boundary_vertices()) {
    Quay q;
    q.vertex = v;
    q.bu = bu_vertex(v, base_.tail_slot(v));
    q.xi_out = island_arc_into(q.bu);
    q.xi_in = island_arc_from(q.bu);
    quay_of_bu_[q.bu] = static_cast<int>(quays_.size());
    quays_.push_back(q);
  }
}

int BlowUpGraph::island_arc_into(int bu) const {
  int u = vertex_of_[bu];
  int size = island_size(u);
  int slot = bu - island_start_[u];
  return island_start_[u] + (slot + size - 1) % size;
}

int BlowUpGraph::arc_origin(int e) const {
  if (is_island_arc(e)) return e;
  Arc a = base_.arc(original_arc(e));
  return bu_vertex(a.from, base_.slot_of(a.from, a.to));
}

int BlowUpGraph::arc_terminus(int e) const {
  if (is_island_arc(e)) {
    int u = vertex_of_[e];
    int size = island_size(u);
    int slot = e - island_start_[u];
    return island_start_[u] + (slot + 1) % size;
  }
  Arc a = base_.arc(original_arc(e));
  return bu_vertex(a.to, base_.slot_of(a.to, a.from));
}

std::string BlowUpGraph::bu_vertex_name(int bu) const {
  int u = vertex_of_[bu];
  int entry = base_.rotation(u)[slot_of(bu)];
  std::string target = entry == kTailSlot ? "*" : base_.vertex_name(entry);
  return "(" + base_.vertex_name(u) + "," + target + ")";
}

std::string BlowUpGraph::arc_description(int e) const {
  std::string kind = is_island_arc(e) ? "island" : "bridge";
  return kind + " " + std::to_string(e) + " : " + bu_vertex_name(arc_origin(e)) +
         " -> " + bu_vertex_name(arc_terminus(e));
}

BlowUpGraph blow_up(const RotationGraph& g) { return BlowUpGraph(g); }

std::vector<int> face_arcs(const BlowUpGraph& bu, const FacialWalk& f) {
  const RotationGraph& g = bu.base();
  const int s = f.length();
  for (int a : f.bridge_arcs)
    if (a < 0 || a >= g.arc_count())
      throw ValidationError("facial walk does not belong to this graph");

  // islands covered between bridge j and bridge j+1
  auto islands_after = [&](int j, std::vector<int>& out) {
    Arc cur = g.arc(f.bridge_arcs[j]);
    Arc next = g.arc(f.bridge_arcs[(j + 1) % s]);
    if (cur.to != next.from)
      throw ValidationError("facial walk is not closed in this graph");
    int v = cur.to;
    int from_slot = g.slot_of(v, cur.from);
    int to_slot = g.slot_of(v, next.to);
    int size = g.rotation_size(v);
    // a zero offset means the run wraps the whole island (degree-1 vertices)
    int count = (to_slot - from_slot + size) % size;
    if (count == 0) count = size;
    for (int k = 0; k < count; ++k)
      out.push_back(bu.bu_vertex(v, (from_slot + k) % size));
  };

  std::vector<int> arcs;
  if (!f.external) {
    for (int j = 0; j < s; ++j) {
      arcs.push_back(bu.bridge_arc(f.bridge_arcs[j]));
      std::vector<int> run;
      islands_after(j, run);
      if (run.size() != 1)
        throw ValidationError("facial walk marked internal crosses a quay");
      arcs.push_back(run[0]);
    }
    return arcs;
  }

  // external: start at the first quay's xi_in and keep quay pairs adjacent
  const int start = f.quay_slots[0];
  arcs.push_back(bu.quays()[g.tail_of_vertex(f.quay_vertices[0])].xi_in);
  for (int step = 0; step < s; ++step) {
    int j = (start + step) % s;
    arcs.push_back(bu.bridge_arc(f.bridge_arcs[j]));
    std::vector<int> run;
    islands_after(j, run);
    for (int arc : run) arcs.push_back(arc);
  }
  // the walk ends with the xi_out into the starting quay; drop the duplicated
  // xi_in that islands_after() of the last gap appended after it
  if (arcs.size() < 2 || arcs.back() != arcs.front())
    throw InternalError("external facial walk did not close at its first quay");
  arcs.pop_back();
  return arcs;
}

}  // namespace fqw
