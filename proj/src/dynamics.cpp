#include "fqw/dynamics.hpp"

#include <cmath>

#include "fqw/errors.hpp"

namespace fqw {

namespace {

// Per blow-up vertex: the four arcs the coin acts on. Boundary vertices have
// tail >= 0 and no bridge pair; their bridge roles are the tail piers.
struct VertexWiring {
  int in_island;
  int out_island;
  int in_bridge;   // -1 at boundary vertices
  int out_bridge;  // -1 at boundary vertices
  int tail;        // -1 at non-boundary vertices
};

std::vector<VertexWiring> wire(const BlowUpGraph& bu) {
  const RotationGraph& g = bu.base();
  std::vector<VertexWiring> ws(bu.bu_vertex_count());
  for (int w = 0; w < bu.bu_vertex_count(); ++w) {
    VertexWiring& vw = ws[w];
    vw.in_island = bu.island_arc_into(w);
    vw.out_island = bu.island_arc_from(w);
    int u = bu.vertex_of(w);
    int entry = g.rotation(u)[bu.slot_of(w)];
    if (entry == kTailSlot) {
      vw.in_bridge = vw.out_bridge = -1;
      vw.tail = g.tail_of_vertex(u);
    } else {
      vw.out_bridge = bu.bridge_arc(g.arc_index(u, entry));
      vw.in_bridge = bu.bridge_arc(g.arc_index(entry, u));
      vw.tail = -1;
    }
  }
  return ws;
}

void check_sizes(const BlowUpGraph& bu, const ArcState& s) {
  if (s.internal.size() != bu.arc_count() ||
      s.inflow.size() != bu.base().boundary_count())
    throw ValidationError("state is not indexed like this blow-up graph");
}

}  // namespace

ArcState zero_state(const BlowUpGraph& bu, const Eigen::VectorXcd& inflow) {
  if (inflow.size() != bu.base().boundary_count())
    throw ValidationError("inflow length must equal the number of tails");
  ArcState s;
  s.internal = Eigen::VectorXcd::Zero(bu.arc_count());
  s.inflow = inflow;
  s.outflow = Eigen::VectorXcd::Zero(inflow.size());
  return s;
}

namespace {

void step_into(const std::vector<VertexWiring>& ws, const Coin& coin,
               const ArcState& state, ArcState& out) {
  for (const VertexWiring& vw : ws) {
    const auto isl = state.internal[vw.in_island];
    if (vw.tail >= 0) {
      const auto alpha = state.inflow[vw.tail];
      out.internal[vw.out_island] = coin.a * isl + coin.b * alpha;
      out.outflow[vw.tail] = coin.c * isl + coin.d * alpha;
    } else {
      const auto br = state.internal[vw.in_bridge];
      out.internal[vw.out_island] = coin.a * isl + coin.b * br;
      out.internal[vw.out_bridge] = coin.c * isl + coin.d * br;
    }
  }
}

}  // namespace

ArcState step(const BlowUpGraph& bu, const Coin& coin, const ArcState& state) {
  check_sizes(bu, state);
  ArcState out;
  out.inflow = state.inflow;
  out.internal = Eigen::VectorXcd::Zero(bu.arc_count());
  out.outflow = Eigen::VectorXcd::Zero(state.inflow.size());
  step_into(wire(bu), coin, state, out);
  return out;
}

EvolveResult evolve(const BlowUpGraph& bu, const Coin& coin,
                    const Eigen::VectorXcd& inflow, double tol, int max_steps) {
  if (tol <= 0) throw ValidationError("tolerance must be positive");
  EvolveResult res;
  res.state = zero_state(bu, inflow);
  const auto ws = wire(bu);
  ArcState next = res.state;
  for (res.steps = 0; res.steps < max_steps; ++res.steps) {
    step_into(ws, coin, res.state, next);
    double diff =
        std::sqrt((next.internal - res.state.internal).cwiseAbs2().maxCoeff());
    std::swap(res.state, next);
    res.sup_diffs.push_back(diff);
    res.outflow_norms.push_back(res.state.outflow.norm());
    if (diff < tol) {
      ++res.steps;
      res.converged = true;
      break;
    }
  }
  return res;
}

Eigen::MatrixXcd internal_evolution_matrix(const BlowUpGraph& bu, const Coin& coin) {
  const int n = bu.arc_count();
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
  for (const VertexWiring& vw : wire(bu)) {
    e(vw.out_island, vw.in_island) = coin.a;
    if (vw.tail >= 0) continue;
    e(vw.out_island, vw.in_bridge) = coin.b;
    e(vw.out_bridge, vw.in_island) = coin.c;
    e(vw.out_bridge, vw.in_bridge) = coin.d;
  }
  return e;
}

ArcState fixed_point_solve(const BlowUpGraph& bu, const Coin& coin,
                           const Eigen::VectorXcd& inflow) {
  if (inflow.size() != bu.base().boundary_count())
    throw ValidationError("inflow length must equal the number of tails");
  const int n = bu.arc_count();
  Eigen::MatrixXcd a =
      Eigen::MatrixXcd::Identity(n, n) - internal_evolution_matrix(bu, coin);
  Eigen::VectorXcd source = Eigen::VectorXcd::Zero(n);
  for (const auto& q : bu.quays())
    source[q.xi_in] = coin.b * inflow[bu.base().tail_of_vertex(q.vertex)];

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
  Eigen::VectorXcd psi = cod.solve(source);
  double residual = (a * psi - source).lpNorm<Eigen::Infinity>();
  if (!std::isfinite(residual) ||
      residual > 1e-9 * std::max(1.0, source.lpNorm<Eigen::Infinity>()))
    throw InternalError("fixed-point system is inconsistent (residual " +
                        std::to_string(residual) + ")");

  ArcState s;
  s.internal = std::move(psi);
  s.inflow = inflow;
  s.outflow = Eigen::VectorXcd::Zero(inflow.size());
  for (const auto& q : bu.quays()) {
    int t = bu.base().tail_of_vertex(q.vertex);
    s.outflow[t] = coin.c * s.internal[q.xi_out] + coin.d * inflow[t];
  }
  return s;
}

double key_lemma_residual(const BlowUpGraph& bu, const Coin& coin,
                          const Eigen::VectorXcd& psi) {
  if (psi.size() != bu.arc_count())
    throw ValidationError("state is not indexed like this blow-up graph");
  const RotationGraph& g = bu.base();
  const auto omega = coin.omega;
  double worst = 0.0;
  for (int arc = 0; arc < g.arc_count(); ++arc) {
    const int e_br = bu.bridge_arc(arc);
    const int rev_br = bu.bridge_arc(g.reverse_arc(arc));
    const int w = bu.arc_origin(e_br);
    const int wp = bu.arc_terminus(e_br);
    const auto e_is = psi[bu.island_arc_into(w)];
    const auto eps_is = psi[bu.island_arc_from(w)];
    const auto ep_is = psi[bu.island_arc_into(wp)];
    const auto epsp_is = psi[bu.island_arc_from(wp)];
    worst = std::max(worst, std::abs(eps_is - omega * ep_is));
    worst = std::max(worst, std::abs(epsp_is - omega * e_is));
    worst = std::max(worst,
                     std::abs(psi[e_br] - omega / coin.b * (e_is + coin.d * ep_is)));
    worst = std::max(
        worst, std::abs(psi[rev_br] - omega / coin.b * (ep_is + coin.d * e_is)));
  }
  return worst;
}

}  // namespace fqw
