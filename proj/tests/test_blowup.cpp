#include <map>
#include <set>

#include "doctest.h"
#include "fqw/blowup.hpp"
#include "fqw/errors.hpp"

using namespace fqw;

TEST_CASE("tetrahedron blow-up counts") {
  BlowUpGraph bu = blow_up(builtin_graph("tetrahedron"));
  CHECK(bu.bu_vertex_count() == 15);  // three islands of 4, one of 3
  CHECK(bu.island_arc_count() == 15);
  CHECK(bu.bridge_count() == 12);
}

TEST_CASE("degree audit: in-degree and out-degree 2 counting tails") {
  for (const char* name : {"tetrahedron", "k33-10-4-4", "k33-18", "triangle-one-tail"}) {
    BlowUpGraph bu = blow_up(builtin_graph(name));
    std::map<int, int> in, out;
    for (int e = 0; e < bu.arc_count(); ++e) {
      out[bu.arc_origin(e)]++;
      in[bu.arc_terminus(e)]++;
    }
    for (const auto& q : bu.quays()) {
      in[q.bu]++;   // pier in
      out[q.bu]++;  // pier out
    }
    for (int w = 0; w < bu.bu_vertex_count(); ++w) {
      CHECK(in[w] == 2);
      CHECK(out[w] == 2);
    }
  }
}

TEST_CASE("islands close up in |N~_u| steps") {
  BlowUpGraph bu = blow_up(builtin_graph("k33-6-6-6"));
  const RotationGraph& g = bu.base();
  for (int u = 0; u < g.vertex_count(); ++u) {
    int start = bu.bu_vertex(u, 0);
    int w = start;
    for (int k = 0; k < bu.island_size(u); ++k) w = bu.arc_terminus(bu.island_arc_from(w));
    CHECK(w == start);
  }
}

TEST_CASE("degree-2 internal vertex of a path becomes a 2-cycle island") {
  RotationGraph g = RotationGraph::parse("vertex a : b\nvertex b : a c\nvertex c : b\n");
  BlowUpGraph bu = blow_up(g);
  int vb = g.vertex_index("b");
  CHECK(bu.island_size(vb) == 2);
  int w0 = bu.bu_vertex(vb, 0);
  CHECK(bu.arc_terminus(bu.island_arc_from(w0)) == bu.bu_vertex(vb, 1));
  CHECK(bu.arc_terminus(bu.island_arc_from(bu.bu_vertex(vb, 1))) == w0);
  // the end vertices have 1-cycle (self-loop) islands
  CHECK(bu.island_size(g.vertex_index("a")) == 1);
  int wa = bu.bu_vertex(g.vertex_index("a"), 0);
  CHECK(bu.arc_terminus(bu.island_arc_from(wa)) == wa);
}

TEST_CASE("every boundary vertex yields exactly one quay pair") {
  for (const char* name : {"tetrahedron", "k33-10-4-4", "k33-6-6-6", "k33-18"}) {
    BlowUpGraph bu = blow_up(builtin_graph(name));
    const RotationGraph& g = bu.base();
    CHECK(static_cast<int>(bu.quays().size()) == g.boundary_count());
    for (const auto& q : bu.quays()) {
      CHECK(bu.arc_terminus(q.xi_out) == q.bu);
      CHECK(bu.arc_origin(q.xi_in) == q.bu);
    }
  }
}

TEST_CASE("face_arcs alternation on the tetrahedron") {
  RotationGraph g = builtin_graph("tetrahedron");
  BlowUpGraph bu = blow_up(g);
  auto faces = trace_faces(g);
  for (const auto& f : faces) {
    auto arcs = face_arcs(bu, f);
    if (!f.external) {
      REQUIRE(arcs.size() == 6);  // e0 x0 e1 x1 e2 x2
      for (size_t i = 0; i < arcs.size(); ++i)
        CHECK(bu.is_bridge_arc(arcs[i]) == (i % 2 == 0));
    } else {
      // (xi_in, e, xi_out, xi_in, e, xi_out, xi_in, e, xi_out)
      REQUIRE(arcs.size() == 9);
      for (size_t i = 0; i < arcs.size(); ++i)
        CHECK(bu.is_bridge_arc(arcs[i]) == (i % 3 == 1));
    }
    // closed directed walk
    for (size_t i = 0; i < arcs.size(); ++i)
      CHECK(bu.arc_terminus(arcs[i]) == bu.arc_origin(arcs[(i + 1) % arcs.size()]));
  }
}

TEST_CASE("face_arcs covers every blow-up arc exactly once") {
  for (const char* name :
       {"tetrahedron", "k33-10-4-4", "k33-6-6-6", "k33-18", "triangle-one-tail"}) {
    RotationGraph g = builtin_graph(name);
    BlowUpGraph bu = blow_up(g);
    std::multiset<int> covered;
    for (const auto& f : trace_faces(g))
      for (int a : face_arcs(bu, f)) covered.insert(a);
    CHECK(covered.size() == static_cast<size_t>(bu.arc_count()));
    for (int e = 0; e < bu.arc_count(); ++e) CHECK(covered.count(e) == 1);
  }
}

TEST_CASE("face_arcs rejects walks from another graph") {
  RotationGraph g = builtin_graph("triangle-one-tail");
  BlowUpGraph bu = blow_up(g);
  auto foreign = trace_faces(builtin_graph("tetrahedron"));
  CHECK_THROWS_AS(face_arcs(bu, foreign[0]), ValidationError);
}

TEST_CASE("arc dump names islands and bridges") {
  BlowUpGraph bu = blow_up(builtin_graph("triangle-one-tail"));
  CHECK(bu.arc_description(0).rfind("island 0 : ", 0) == 0);
  CHECK(bu.arc_description(bu.bridge_arc(0)).rfind("bridge ", 0) == 0);
}
