#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "fqw/errors.hpp"
#include "fqw/scattering.hpp"
#include "fqw/stationary.hpp"
#include "test_util.hpp"

using namespace fqw;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

// two triangles joined by one edge, one tail at vertex a of the outer face
RotationGraph dumbbell_one_tail() {
  return RotationGraph::parse(
      "vertex a : b * c\n"
      "vertex b : a c\n"
      "vertex c : b a d\n"
      "vertex d : c f e\n"
      "vertex e : d f\n"
      "vertex f : d e\n");
}

// chi U chi* applied to a bare internal vector
Eigen::VectorXcd apply_internal(const BlowUpGraph& bu, const Coin& h,
                                const Eigen::VectorXcd& v) {
  ArcState s;
  s.internal = v;
  s.inflow = Eigen::VectorXcd::Zero(bu.base().boundary_count());
  return step(bu, h, s).internal;
}

}  // namespace

TEST_CASE("internal facial function values on a triangle face at omega = 1") {
  RotationGraph g = builtin_graph("tetrahedron");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin h = make_coin(0.5, 1.0, 0.0);
  int face = dual.internal_faces()[0];
  FacialFunction fn = internal_facial_function(bu, dual, face, h);
  auto arcs = face_arcs(bu, dual.faces[face]);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(fn.values[arcs[2 * j]] - cd(1.0)) < 1e-15);           // bridge
    CHECK(std::abs(fn.values[arcs[2 * j + 1]] - h.b) < 1e-15);           // island
    int rev = bu.bridge_arc(g.reverse_arc(bu.original_arc(arcs[2 * j])));
    CHECK(std::abs(fn.values[rev] - cd(h.d)) < 1e-15);                   // reverse
  }
  CHECK(fn.support.size() == 9);
}

TEST_CASE("kernel characterization: fixed iff omega^|f| = 1") {
  RotationGraph g = builtin_graph("truncated-icosahedron");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin h = make_coin(0.5, std::polar(1.0, pi / 3), 0.0);  // omega^6=1, omega^5!=1
  int checked_hex = 0, checked_pent = 0;
  for (int f : dual.internal_faces()) {
    FacialFunction fn = internal_facial_function(bu, dual, f, h);
    double residual =
        (apply_internal(bu, h, fn.values) - fn.values).lpNorm<Eigen::Infinity>();
    if (dual.faces[f].length() == 6) {
      CHECK(residual < 1e-12);
      ++checked_hex;
    } else {
      // the seam mismatch at the first bridge is exactly (1-d^2)|omega^s - 1|
      double expect =
          std::abs(std::pow(h.omega, 5) - 1.0) * (1.0 - h.d * h.d);
      CHECK(residual >= expect - 1e-12);
      ++checked_pent;
    }
  }
  CHECK(checked_hex == 19);
  CHECK(checked_pent == 12);
}

TEST_CASE("superposed internal function on a both-directions face") {
  // the [18] rotation without tails: one internal face holding both
  // directions of all nine edges
  constexpr int T = kTailSlot;
  (void)T;
  RotationGraph g = RotationGraph::from_rotations(
      {"1", "2", "3", "1'", "2'", "3'"},
      {{3, 4, 5}, {3, 4, 5}, {3, 4, 5}, {0, 1, 2}, {0, 2, 1}, {0, 1, 2}});
  auto dual = dual_graph(g, trace_faces(g));
  REQUIRE(dual.face_count() == 1);
  BlowUpGraph bu = blow_up(g);
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    Coin h = test::random_coin_omega_one(rng);
    FacialFunction fn = internal_facial_function(bu, dual, 0, h);
    // Gram bookkeeping with m_f = 18
    double norm2 = fn.values.squaredNorm();
    CHECK(norm2 == doctest::Approx(2.0 * 18 + 2.0 * h.d * 18).epsilon(1e-12));
    // with no tails chi U chi* is the full unitary evolution, so the
    // function must be exactly fixed at omega^18 = 1
    CHECK((apply_internal(bu, h, fn.values) - fn.values).lpNorm<Eigen::Infinity>() <
          1e-12);
  }
}

TEST_CASE("external function is a fixed point with its own tail data") {
  std::mt19937 rng(13);
  for (const char* name : {"tetrahedron", "k33-10-4-4", "k33-6-6-6", "k33-18"}) {
    RotationGraph g = builtin_graph(name);
    auto dual = dual_graph(g, trace_faces(g));
    BlowUpGraph bu = blow_up(g);
    for (int i = 0; i < 3; ++i) {
      Coin h = test::random_coin(rng);
      Eigen::VectorXcd alpha(g.boundary_count());
      for (int t = 0; t < alpha.size(); ++t)
        alpha[t] = cd(std::uniform_real_distribution<double>(-1, 1)(rng),
                      std::uniform_real_distribution<double>(-1, 1)(rng));
      Eigen::VectorXcd beta = scattering_matrix(g, dual.faces, h).full * alpha;
      for (int f : dual.external_faces()) {
        // restrict the tail data to this face's quays
        Eigen::VectorXcd af = Eigen::VectorXcd::Zero(alpha.size());
        Eigen::VectorXcd bf = Eigen::VectorXcd::Zero(alpha.size());
        for (int v : dual.faces[f].quay_vertices) {
          af[g.tail_of_vertex(v)] = alpha[g.tail_of_vertex(v)];
          bf[g.tail_of_vertex(v)] = beta[g.tail_of_vertex(v)];
        }
        FacialFunction fn = external_facial_function(bu, dual, f, h, af, bf);
        ArcState s;
        s.internal = fn.values;
        s.inflow = af;
        ArcState next = step(bu, h, s);
        CHECK((next.internal - fn.values).lpNorm<Eigen::Infinity>() < 1e-12);
        CHECK((next.outflow - bf).lpNorm<Eigen::Infinity>() < 1e-12);
      }
    }
  }
}

TEST_CASE("tetrahedron eta values: eta = 1/(1-a) at omega = 1") {
  RotationGraph g = builtin_graph("tetrahedron");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin h = make_coin(0.5, 1.0, 0.0);
  Eigen::VectorXcd alpha = Eigen::VectorXcd::Ones(3);
  Eigen::VectorXcd beta = scattering_matrix(g, dual.faces, h).full * alpha;
  int f = dual.external_faces()[0];
  FacialFunction fn = external_facial_function(bu, dual, f, h, alpha, beta);
  cd eta = 1.0 / (1.0 - h.a);
  for (const auto& q : bu.quays()) {
    CHECK(std::abs(fn.values[q.xi_in] - h.b * eta) < 1e-12);
    CHECK(std::abs(fn.values[q.xi_out] - h.b * eta) < 1e-12);
  }
}

TEST_CASE("zero inflow gives the zero external function") {
  RotationGraph g = builtin_graph("k33-18");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin h = make_coin(0.3, std::polar(1.0, 0.4), 0.1);
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(6);
  FacialFunction fn =
      external_facial_function(bu, dual, dual.external_faces()[0], h, zero, zero);
  CHECK(fn.values.lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("combinatorial Gram matrix of the tetrahedron") {
  RotationGraph g = builtin_graph("tetrahedron");
  auto dual = dual_graph(g, trace_faces(g));
  Coin h = make_coin(0.5, 1.0, 0.0);
  Eigen::MatrixXd m = gram_matrix(dual, h);
  REQUIRE(m.rows() == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(m(i, j) == doctest::Approx(i == j ? 6.0 : 1.0).epsilon(1e-14));
}

TEST_CASE("Gram matrix off-diagonal vanishes for non-adjacent faces") {
  RotationGraph g = dumbbell_one_tail();
  auto dual = dual_graph(g, trace_faces(g));
  REQUIRE(dual.internal_faces().size() == 2);
  Coin h = make_coin(0.37, 1.0, 0.0);
  Eigen::MatrixXd m = gram_matrix(dual, h);
  CHECK(m(0, 1) == 0.0);
  CHECK(m(1, 0) == 0.0);
  CHECK(m(0, 0) == doctest::Approx(6.0).epsilon(1e-14));  // 2|f| with m_f = 0
}

TEST_CASE("Gram formula equals the inner products of the built functions") {
  std::mt19937 rng(37);
  for (int i = 0; i < 6; ++i) {
    RotationGraph g = i % 2 == 0 ? builtin_graph("tetrahedron") : dumbbell_one_tail();
    auto dual = dual_graph(g, trace_faces(g));
    BlowUpGraph bu = blow_up(g);
    Coin h = test::random_coin_omega_one(rng);
    std::vector<FacialFunction> fns;
    for (int f : dual.internal_faces())
      fns.push_back(internal_facial_function(bu, dual, f, h));
    Eigen::MatrixXcd numeric = numeric_gram(fns);
    Eigen::MatrixXd formula = gram_matrix(dual, h);
    CHECK((numeric - formula.cast<cd>()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("gram_matrix preconditions") {
  RotationGraph g = builtin_graph("k33-6-6-6");  // three external faces
  auto dual = dual_graph(g, trace_faces(g));
  CHECK_THROWS_AS(gram_matrix(dual, make_coin(0.5, 1.0, 0.0)), ValidationError);
  RotationGraph t = builtin_graph("tetrahedron");
  auto tdual = dual_graph(t, trace_faces(t));
  CHECK_THROWS_AS(gram_matrix(tdual, make_coin(0.5, std::polar(1.0, 0.3), 0.0)),
                  ValidationError);
}

TEST_CASE("tetrahedron coefficients and amplitude table at omega = 1") {
  RotationGraph g = builtin_graph("tetrahedron");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin h = make_coin(0.5, 1.0, 0.0);
  Eigen::VectorXcd alpha = Eigen::VectorXcd::Ones(3);

  for (auto method : {StationaryMethod::Gram, StationaryMethod::Project,
                      StationaryMethod::Solve}) {
    auto dec = stationary_state(bu, dual, h, alpha, method);
    // eta = 2/3, nu = d eta / (2d+3) * ... = 1/12; the b-vector entry is
    // <gamma_f, psi_ex> = 2 d eta per shared edge pair
    for (int f : dec.kernel_faces)
      CHECK(std::abs(dec.coefficients[f] - cd(1.0 / 12)) < 1e-12);

    const double eta = 2.0 / 3.0, nu = 1.0 / 12.0;
    const double b = h.b.real(), d = h.d;
    std::set<int> quay_arcs, ext_bridges, first_bridges;
    for (const auto& q : bu.quays()) {
      quay_arcs.insert(q.xi_in);
      quay_arcs.insert(q.xi_out);
    }
    int fext = dual.external_faces()[0];
    for (int a : dual.faces[fext].bridge_arcs) {
      ext_bridges.insert(bu.bridge_arc(a));
      first_bridges.insert(bu.bridge_arc(g.reverse_arc(a)));
    }
    for (int e = 0; e < bu.arc_count(); ++e) {
      double expect;
      if (quay_arcs.count(e))
        expect = b * eta;
      else if (ext_bridges.count(e))
        expect = eta - nu * d;
      else if (first_bridges.count(e))
        expect = d * eta - nu;
      else if (bu.is_island_arc(e))
        expect = -nu * b;
      else
        expect = -nu * (1 + d);
      CHECK(std::abs(dec.state.internal[e] - expect) < 1e-10);
    }
  }
}

TEST_CASE("closed-form coefficient c = 2 d eta / (2(2d+3)) across omega=1 coins") {
  RotationGraph g = builtin_graph("tetrahedron");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  std::mt19937 rng(43);
  for (int i = 0; i < 10; ++i) {
    Coin h = test::random_coin_omega_one(rng);
    auto dec = stationary_state(bu, dual, h, Eigen::VectorXcd::Ones(3),
                                StationaryMethod::Gram);
    cd eta = 1.0 / (1.0 - h.a);
    cd expect = 2.0 * h.d * eta / (2.0 * (2.0 * h.d + 3.0));
    for (int f : dec.kernel_faces)
      CHECK(std::abs(dec.coefficients[f] - expect) < 1e-12);
  }
}

TEST_CASE("methods agree and the state is orthogonal to the kernel") {
  std::mt19937 rng(47);
  for (const char* name : {"tetrahedron", "k33-10-4-4", "k33-18", "triangle-one-tail"}) {
    RotationGraph g = builtin_graph(name);
    auto dual = dual_graph(g, trace_faces(g));
    BlowUpGraph bu = blow_up(g);
    Eigen::VectorXcd alpha = Eigen::VectorXcd::Ones(g.boundary_count());
    for (int i = 0; i < 5; ++i) {
      Coin h = test::random_coin(rng);
      auto proj = stationary_state(bu, dual, h, alpha, StationaryMethod::Project);
      auto solve = stationary_state(bu, dual, h, alpha, StationaryMethod::Solve);
      CHECK((proj.state.internal - solve.state.internal).lpNorm<Eigen::Infinity>() <
            1e-8);
      CHECK(orthogonality_residual(bu, dual, h, proj) < 1e-10);
      CHECK(key_lemma_residual(bu, h, proj.state.internal) < 1e-10);
    }
  }
}

TEST_CASE("luminosity of the triangle face") {
  RotationGraph g = builtin_graph("triangle-one-tail");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Eigen::VectorXcd alpha = Eigen::VectorXcd::Ones(1);

  auto dark_islands = [&](const StationaryDecomposition& dec) {
    for (int f : dual.internal_faces()) {
      auto arcs = face_arcs(bu, dual.faces[f]);
      for (size_t i = 1; i < arcs.size(); i += 2)
        if (std::abs(dec.state.internal[arcs[i]]) > 1e-10) return false;
    }
    return true;
  };

  // omega = 1: the triangle is in the kernel and carries amplitude
  Coin one = make_coin(0.5, 1.0, 0.0);
  auto dec1 = stationary_state(bu, dual, one, alpha, StationaryMethod::Project);
  CHECK(luminous_faces(dual, dec1).size() == 2);  // external + the triangle

  // omega = e^{2 pi i/3}: still a kernel face, but the overlap with the
  // external function sums three phases omega^{-2j} to zero, so the
  // coefficient vanishes and the face stays dark
  Coin resonant = make_coin(0.5, std::polar(1.0, 2 * pi / 3), 0.0);
  auto dec2 = stationary_state(bu, dual, resonant, alpha, StationaryMethod::Project);
  REQUIRE(dec2.kernel_faces.size() == 1);
  CHECK(std::abs(dec2.coefficients[dec2.kernel_faces[0]]) < 1e-14);
  CHECK(luminous_faces(dual, dec2).size() == 1);
  CHECK(dark_islands(dec2));

  // omega = i: no kernel face at all
  Coin off = make_coin(0.5, std::polar(1.0, pi / 2), 0.0);
  auto dec3 = stationary_state(bu, dual, off, alpha, StationaryMethod::Project);
  CHECK(dec3.kernel_faces.empty());
  auto lum = luminous_faces(dual, dec3);
  REQUIRE(lum.size() == 1);
  CHECK(dual.faces[lum[0]].external);
  CHECK(dark_islands(dec3));
}

TEST_CASE("facial function type errors") {
  RotationGraph g = builtin_graph("tetrahedron");
  auto dual = dual_graph(g, trace_faces(g));
  BlowUpGraph bu = blow_up(g);
  Coin h = make_coin(0.5, 1.0, 0.0);
  int fext = dual.external_faces()[0];
  int fint = dual.internal_faces()[0];
  CHECK_THROWS_AS(internal_facial_function(bu, dual, fext, h), ValidationError);
  Eigen::VectorXcd a3 = Eigen::VectorXcd::Ones(3);
  CHECK_THROWS_AS(external_facial_function(bu, dual, fint, h, a3, a3),
                  ValidationError);
  Eigen::VectorXcd bad = Eigen::VectorXcd::Ones(2);
  CHECK_THROWS_AS(external_facial_function(bu, dual, fext, h, bad, a3),
                  ValidationError);
}
