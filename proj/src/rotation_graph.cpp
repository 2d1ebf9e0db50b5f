#include "fqw/rotation_graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "fqw/errors.hpp"

namespace fqw {

int RotationGraph::vertex_index(std::string_view name) const {
  auto it = index_of_.find(std::string(name));
  return it == index_of_.end() ? -1 : it->second;
}

int RotationGraph::slot_of(int v, int entry) const {
  const auto& rot = rotations_[v];
  for (int i = 0; i < static_cast<int>(rot.size()); ++i)
    if (rot[i] == entry) return i;
  return -1;
}

int RotationGraph::arc_index(int from, int to) const {
  for (int a = arc_start_[from]; a < arc_start_[from + 1]; ++a)
    if (arcs_[a].to == to) return a;
  return -1;
}

RotationGraph RotationGraph::from_rotations(std::vector<std::string> names,
                                            std::vector<std::vector<int>> rotations) {
  const int n = static_cast<int>(names.size());
  if (n == 0) throw ValidationError("graph has no vertices");
  if (rotations.size() != names.size())
    throw ValidationError("rotation list count does not match vertex count");

  RotationGraph g;
  g.names_ = std::move(names);
  g.rotations_ = std::move(rotations);
  for (int v = 0; v < n; ++v) {
    if (g.names_[v].empty() || g.names_[v] == "*")
      throw ValidationError("invalid vertex id '" + g.names_[v] + "'");
    if (!g.index_of_.emplace(g.names_[v], v).second)
      throw ValidationError("duplicate vertex '" + g.names_[v] + "'");
  }

  g.tail_slot_.assign(n, -1);
  g.tail_id_.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    std::set<int> seen;
    for (int i = 0; i < g.rotation_size(v); ++i) {
      int entry = g.rotations_[v][i];
      if (entry == kTailSlot) {
        if (g.tail_slot_[v] >= 0)
          throw ValidationError("vertex '" + g.names_[v] + "' has multiple tail slots");
        g.tail_slot_[v] = i;
        continue;
      }
      if (entry < 0 || entry >= n)
        throw InternalError("rotation entry out of range");
      if (entry == v)
        throw ValidationError("self-loop at vertex '" + g.names_[v] + "'");
      if (!seen.insert(entry).second)
        throw ValidationError("multi-edge " + g.names_[v] + " -- " + g.names_[entry]);
    }
    if (g.tail_slot_[v] >= 0) {
      g.tail_id_[v] = static_cast<int>(g.boundary_.size());
      g.boundary_.push_back(v);
    }
  }

  // symmetry: u lists v iff v lists u
  for (int u = 0; u < n; ++u)
    for (int v : g.rotations_[u]) {
      if (v == kTailSlot) continue;
      if (g.slot_of(v, u) < 0)
        throw ValidationError("arc " + g.names_[u] + " -> " + g.names_[v] +
                              " is not reciprocated");
    }

  // canonical arc order: sorted by (from, to)
  for (int u = 0; u < n; ++u)
    for (int v : g.rotations_[u])
      if (v != kTailSlot) g.arcs_.push_back({u, v});
  std::sort(g.arcs_.begin(), g.arcs_.end(), [](const Arc& x, const Arc& y) {
    return x.from != y.from ? x.from < y.from : x.to < y.to;
  });
  g.arc_start_.assign(n + 1, 0);
  for (const Arc& a : g.arcs_) g.arc_start_[a.from + 1]++;
  for (int v = 0; v < n; ++v) g.arc_start_[v + 1] += g.arc_start_[v];

  if (g.arcs_.empty()) throw ValidationError("graph has no edges");

  // connectivity
  std::vector<char> reached(n, 0);
  std::queue<int> bfs;
  bfs.push(0);
  reached[0] = 1;
  int count = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int v : g.rotations_[u])
      if (v != kTailSlot && !reached[v]) {
        reached[v] = 1;
        ++count;
        bfs.push(v);
      }
  }
  if (count != n) throw ValidationError("graph is not connected");
  return g;
}

RotationGraph RotationGraph::parse(std::string_view text) {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<std::string>> neighbor_tokens;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword != "vertex")
      throw ParseError("line " + std::to_string(lineno) + ": expected 'vertex', got '" +
                       keyword + "'");
    std::string id, colon;
    if (!(ls >> id >> colon) || colon != ":")
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'vertex <id> : <rotation>'");
    if (index.count(id))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate vertex '" + id + "'");
    index.emplace(id, static_cast<int>(names.size()));
    names.push_back(id);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    neighbor_tokens.push_back(std::move(tokens));
  }

  std::vector<std::vector<int>> rotations(names.size());
  for (size_t v = 0; v < names.size(); ++v) {
    for (const std::string& tok : neighbor_tokens[v]) {
      if (tok == "*") {
        rotations[v].push_back(kTailSlot);
        continue;
      }
      auto it = index.find(tok);
      if (it == index.end())
        throw ValidationError("vertex '" + tok + "' referenced by '" + names[v] +
                              "' but never declared");
      rotations[v].push_back(it->second);
    }
  }
  return from_rotations(std::move(names), std::move(rotations));
}

std::vector<int> FacialWalk::gaps() const {
  std::vector<int> out;
  const int s = length();
  const int k = quay_count();
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    int next = quay_slots[(j + 1) % k];
    int gap = next - quay_slots[j];
    if (gap <= 0) gap += s;
    out.push_back(gap);
  }
  return out;
}

namespace {

// Elements of the successor permutation: arcs 0..|A|-1, then one element per
// tail in boundary order. succ(e) applies the rotation at t(e) to o(e); a
// tail target diverts through the tail element before re-entering the graph.
struct FaceTracer {
  const RotationGraph& g;
  int n_arcs;

  explicit FaceTracer(const RotationGraph& graph)
      : g(graph), n_arcs(graph.arc_count()) {}

  int element_count() const { return n_arcs + g.boundary_count(); }

  int successor(int el) const {
    int v, from_entry;
    if (el < n_arcs) {
      Arc a = g.arc(el);
      v = a.to;
      from_entry = a.from;
    } else {
      v = g.boundary_vertices()[el - n_arcs];
      from_entry = kTailSlot;
    }
    const auto& rot = g.rotation(v);
    int pos = g.slot_of(v, from_entry);
    int target = rot[(pos + 1) % rot.size()];
    if (target == kTailSlot) return n_arcs + g.tail_of_vertex(v);
    return g.arc_index(v, target);
  }
};

}  // namespace

std::vector<FacialWalk> trace_faces(const RotationGraph& g) {
  FaceTracer tracer(g);
  const int total = tracer.element_count();
  std::vector<char> visited(total, 0);
  std::vector<FacialWalk> faces;

  // ascending scan: each orbit starts at its minimal element, which is an arc
  // since tail elements are numbered above all arcs and never follow each other
  for (int start = 0; start < total; ++start) {
    if (visited[start]) continue;
    if (start >= tracer.n_arcs)
      throw InternalError("face orbit without a graph arc");
    FacialWalk walk;
    std::vector<std::pair<int, int>> quays;  // (slot, vertex)
    int el = start;
    do {
      visited[el] = 1;
      if (el < tracer.n_arcs) {
        walk.bridge_arcs.push_back(el);
      } else {
        int v = g.boundary_vertices()[el - tracer.n_arcs];
        quays.emplace_back(static_cast<int>(walk.bridge_arcs.size()), v);
      }
      el = tracer.successor(el);
    } while (el != start);

    const int s = walk.length();
    for (auto& [slot, v] : quays)
      if (slot == s) slot = 0;  // trailing quay wraps to the front slot
    std::sort(quays.begin(), quays.end());
    for (const auto& [slot, v] : quays) {
      walk.quay_slots.push_back(slot);
      walk.quay_vertices.push_back(v);
    }
    walk.external = !quays.empty();
    faces.push_back(std::move(walk));
  }
  return faces;
}

int genus(const RotationGraph& g) {
  const int r = static_cast<int>(trace_faces(g).size());
  const int b1 = g.betti_number();
  const int numerator = b1 - r + 1;
  if (numerator < 0 || numerator % 2 != 0)
    throw InternalError("Euler count b1 - r + 1 = " + std::to_string(numerator) +
                        " is not an even non-negative integer");
  return numerator / 2;
}

std::vector<int> DualGraph::internal_faces() const {
  std::vector<int> out;
  for (int f = 0; f < face_count(); ++f)
    if (!faces[f].external) out.push_back(f);
  return out;
}

std::vector<int> DualGraph::external_faces() const {
  std::vector<int> out;
  for (int f = 0; f < face_count(); ++f)
    if (faces[f].external) out.push_back(f);
  return out;
}

DualGraph dual_graph(const RotationGraph& g, std::vector<FacialWalk> faces) {
  DualGraph dual;
  dual.faces = std::move(faces);
  dual.face_of_arc.assign(g.arc_count(), -1);
  for (int f = 0; f < dual.face_count(); ++f)
    for (int a : dual.faces[f].bridge_arcs) {
      if (dual.face_of_arc[a] != -1)
        throw InternalError("arc in two facial walks");
      dual.face_of_arc[a] = f;
    }
  for (int a = 0; a < g.arc_count(); ++a)
    if (dual.face_of_arc[a] == -1)
      throw InternalError("arc missed by the facial walks");

  const int p = dual.face_count();
  dual.multiplicity.assign(p, std::vector<int>(p, 0));
  for (int a = 0; a < g.arc_count(); ++a) {
    int f = dual.face_of_arc[a];
    int rev = g.reverse_arc(a);
    dual.multiplicity[f][dual.face_of_arc[rev]] += 1;
  }
  return dual;
}

RotationGraph attach_tails_along_face(const RotationGraph& g, const FacialWalk& face) {
  if (face.external)
    throw ValidationError("face already has tails");
  const int s = face.length();
  std::set<int> visited;
  std::vector<std::vector<int>> rotations = g.rotations();
  std::vector<std::string> names;
  names.reserve(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) names.push_back(g.vertex_name(v));

  for (int j = 0; j < s; ++j) {
    Arc prev = g.arc(face.bridge_arcs[(j + s - 1) % s]);
    Arc cur = g.arc(face.bridge_arcs[j]);
    int v = cur.from;  // == prev.to
    if (!visited.insert(v).second)
      throw ValidationError("face visits vertex '" + g.vertex_name(v) +
                            "' twice; tail placement is ambiguous");
    int pos = g.slot_of(v, prev.from);
    rotations[v].insert(rotations[v].begin() + pos + 1, kTailSlot);
  }
  return RotationGraph::from_rotations(std::move(names), std::move(rotations));
}

namespace {

RotationGraph make_tetrahedron() {
  // planar rotation with outer face (0,1,2); tails on the outer face
  RotationGraph closed = RotationGraph::from_rotations(
      {"0", "1", "2", "3"},
      {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}});
  auto faces = trace_faces(closed);
  int outer = -1;
  int a01 = closed.arc_index(0, 1);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int a : faces[f].bridge_arcs)
      if (a == a01) outer = f;
  return attach_tails_along_face(closed, faces[outer]);
}

RotationGraph make_k33(const std::vector<std::vector<int>>& rotations) {
  return RotationGraph::from_rotations({"1", "2", "3", "1'", "2'", "3'"}, rotations);
}

constexpr int T = kTailSlot;

// Rotations listed for 1,2,3,1',2',3' with indices 1'=3, 2'=4, 3'=5.
// Tail slots sit between 1' and 2' (resp. 1 and 2), the Fig. 4 placement.
RotationGraph make_k33_10_4_4() {
  return make_k33({{5, 4, T, 3},
                   {5, 3, T, 4},
                   {3, 5, 4, T},
                   {0, T, 1, 2},
                   {0, 2, 1, T},
                   {0, T, 1, 2}});
}

RotationGraph make_k33_6_6_6() {
  return make_k33({{3, 5, 4, T},
                   {4, T, 3, 5},
                   {5, 4, T, 3},
                   {1, T, 0, 2},
                   {2, 1, T, 0},
                   {0, 2, 1, T}});
}

RotationGraph make_k33_18() {
  return make_k33({{3, T, 4, 5},
                   {3, T, 4, 5},
                   {3, T, 4, 5},
                   {0, T, 1, 2},
                   {0, 2, 1, T},
                   {0, T, 1, 2}});
}

RotationGraph make_triangle_one_tail() {
  return RotationGraph::from_rotations({"0", "1", "2"}, {{1, 2, T}, {2, 0}, {0, 1}});
}

// Truncated icosahedron: every icosahedron vertex becomes a pentagon, every
// triangular face a hexagon. Truncation vertices are icosahedron arcs x->y,
// named "x:y"; the rotation at x->y is (y:x, x:rot_x(y), x:rot_x^{-1}(y)).
RotationGraph make_truncated_icosahedron() {
  // icosahedron: pole 0, upper ring 1..5, lower ring 6..10, pole 11
  auto up = [](int i) { return 1 + ((i - 1) % 5); };   // i cyclic in 1..5
  auto low = [](int i) { return 6 + ((i - 1) % 5); };  // i cyclic in 1..5
  std::vector<std::vector<int>> ico(12);
  ico[0] = {up(1), up(5), up(4), up(3), up(2)};
  for (int i = 1; i <= 5; ++i) {
    ico[up(i)] = {0, up(i + 1), low(i + 1), low(i), up(i + 4)};
    ico[low(i)] = {up(i), low(i + 1), 11, low(i + 4), up(i + 4)};
  }
  ico[11] = {low(1), low(2), low(3), low(4), low(5)};

  auto rot_next = [&](int x, int y) {
    const auto& r = ico[x];
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] == y) return r[(i + 1) % r.size()];
    throw InternalError("icosahedron adjacency broken");
  };
  auto rot_prev = [&](int x, int y) {
    const auto& r = ico[x];
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] == y) return r[(i + r.size() - 1) % r.size()];
    throw InternalError("icosahedron adjacency broken");
  };

  std::vector<std::string> names;
  std::unordered_map<int, int> id;  // packed icosa arc -> truncation vertex
  auto pack = [](int x, int y) { return x * 12 + y; };
  for (int x = 0; x < 12; ++x)
    for (int y : ico[x]) {
      id[pack(x, y)] = static_cast<int>(names.size());
      names.push_back(std::to_string(x) + ":" + std::to_string(y));
    }

  std::vector<std::vector<int>> rotations(names.size());
  for (int x = 0; x < 12; ++x)
    for (int y : ico[x]) {
      int v = id[pack(x, y)];
      rotations[v] = {id[pack(y, x)], id[pack(x, rot_next(x, y))],
                      id[pack(x, rot_prev(x, y))]};
    }
  RotationGraph closed =
      RotationGraph::from_rotations(std::move(names), std::move(rotations));

  // outer face: the hexagon of the icosahedron face (0, 1, 2),
  // containing the truncation arc 0:1 -> 1:0
  auto faces = trace_faces(closed);
  int a = closed.arc_index(closed.vertex_index("0:1"), closed.vertex_index("1:0"));
  int outer = -1;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int arc : faces[f].bridge_arcs)
      if (arc == a) outer = f;
  if (faces[outer].length() != 6)
    throw InternalError("outer face of the truncated icosahedron is not a hexagon");
  return attach_tails_along_face(closed, faces[outer]);
}

}  // namespace

const std::vector<std::string>& builtin_graph_names() {
  static const std::vector<std::string> names = {
      "tetrahedron", "k33-10-4-4", "k33-6-6-6", "k33-18",
      "truncated-icosahedron", "triangle-one-tail"};
  return names;
}

RotationGraph builtin_graph(std::string_view name) {
  if (name == "tetrahedron") return make_tetrahedron();
  if (name == "k33-10-4-4") return make_k33_10_4_4();
  if (name == "k33-6-6-6") return make_k33_6_6_6();
  if (name == "k33-18") return make_k33_18();
  if (name == "truncated-icosahedron") return make_truncated_icosahedron();
  if (name == "triangle-one-tail") return make_triangle_one_tail();
  throw ValidationError("unknown built-in graph '" + std::string(name) + "'");
}

RotationGraph load_graph(const std::string& name_or_path) {
  for (const auto& n : builtin_graph_names())
    if (n == name_or_path) return builtin_graph(n);
  std::FILE* file = std::fopen(name_or_path.c_str(), "rb");
  if (!file)
    throw ValidationError("'" + name_or_path +
                          "' is neither a built-in graph nor a readable file");
  std::string text;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), file)) > 0) text.append(buf, got);
  std::fclose(file);
  return RotationGraph::parse(text);
}

}  // namespace fqw
