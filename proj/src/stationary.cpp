#include "fqw/stationary.hpp"

#include <cmath>

#include "fqw/errors.hpp"
#include "fqw/scattering.hpp"

namespace fqw {

namespace {

constexpr double kKernelTol = 1e-10;

void add_value(FacialFunction& fn, int arc, std::complex<double> v) {
  if (fn.values[arc] == std::complex<double>(0.0) && v != std::complex<double>(0.0))
    fn.support.push_back(arc);
  fn.values[arc] += v;
}

bool is_kernel_face(const FacialWalk& f, const Coin& coin) {
  return !f.external &&
         std::abs(std::pow(coin.omega, f.length()) - 1.0) <= kKernelTol;
}

}  // namespace

FacialFunction internal_facial_function(const BlowUpGraph& bu, const DualGraph& dual,
                                        int face, const Coin& coin) {
  const FacialWalk& f = dual.faces.at(face);
  if (f.external)
    throw ValidationError("internal facial function requested for an external face");
  FacialFunction fn;
  fn.face = face;
  fn.external = false;
  fn.values = Eigen::VectorXcd::Zero(bu.arc_count());

  const RotationGraph& g = bu.base();
  const auto arcs = face_arcs(bu, f);  // br_0, isl_0, br_1, isl_1, ...
  std::complex<double> phase = 1.0;
  for (int j = 0; j < f.length(); ++j) {
    int bridge = arcs[2 * j];
    int island = arcs[2 * j + 1];
    add_value(fn, bridge, phase);
    add_value(fn, island, coin.b * phase);
    add_value(fn, bu.bridge_arc(g.reverse_arc(bu.original_arc(bridge))),
              coin.d * phase);
    phase *= coin.omega;
  }
  return fn;
}

FacialFunction external_facial_function(const BlowUpGraph& bu, const DualGraph& dual,
                                        int face, const Coin& coin,
                                        const Eigen::VectorXcd& inflow,
                                        const Eigen::VectorXcd& outflow) {
  const FacialWalk& f = dual.faces.at(face);
  if (!f.external)
    throw ValidationError("external facial function requested for an internal face");
  const RotationGraph& g = bu.base();
  if (inflow.size() != g.boundary_count() || outflow.size() != g.boundary_count())
    throw ValidationError("inflow/outflow length must equal the number of tails");

  FacialFunction fn;
  fn.face = face;
  fn.external = true;
  fn.values = Eigen::VectorXcd::Zero(bu.arc_count());

  const int s = f.length();
  const int k = f.quay_count();
  const auto gaps = f.gaps();
  for (int m = 0; m < k; ++m) {
    const int next_tail = g.tail_of_vertex(f.quay_vertices[(m + 1) % k]);
    const std::complex<double> eta =
        std::pow(coin.omega, -gaps[m]) / (coin.b * coin.c) *
        (outflow[next_tail] - coin.d * inflow[next_tail]);
    const int this_tail = g.tail_of_vertex(f.quay_vertices[m]);

    add_value(fn, bu.quays()[this_tail].xi_in, coin.b * eta);
    std::complex<double> phase = 1.0;
    for (int j = 1; j <= gaps[m]; ++j) {
      phase *= coin.omega;
      const int bridge = f.bridge_arcs[(f.quay_slots[m] + j - 1) % s];
      add_value(fn, bu.bridge_arc(bridge), phase * eta);
      add_value(fn, bu.bridge_arc(g.reverse_arc(bridge)), coin.d * phase * eta);
      if (j < gaps[m]) {
        // single island arc at the turn after this bridge
        Arc cur = g.arc(bridge);
        add_value(fn, bu.bu_vertex(cur.to, g.slot_of(cur.to, cur.from)),
                  coin.b * phase * eta);
      }
    }
    add_value(fn, bu.quays()[next_tail].xi_out, coin.b * phase * eta);
  }
  return fn;
}

Eigen::MatrixXd gram_matrix(const DualGraph& dual, const Coin& coin) {
  if (std::abs(coin.omega - 1.0) > kKernelTol)
    throw ValidationError("closed-form Gram entries require omega = 1");
  if (dual.external_faces().size() != 1)
    throw ValidationError("closed-form Gram entries require a single external face");
  const auto internal = dual.internal_faces();
  const int p = static_cast<int>(internal.size());
  Eigen::MatrixXd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      m(i, j) = 2.0 * coin.d * dual.multiplicity[internal[i]][internal[j]];
      if (i == j) m(i, j) += 2.0 * dual.faces[internal[i]].length();
    }
  return m;
}

Eigen::MatrixXcd numeric_gram(const std::vector<FacialFunction>& functions) {
  const int p = static_cast<int>(functions.size());
  Eigen::MatrixXcd m(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      m(i, j) = functions[i].values.dot(functions[j].values);
  return m;
}

StationaryDecomposition stationary_state(const BlowUpGraph& bu, const DualGraph& dual,
                                         const Coin& coin,
                                         const Eigen::VectorXcd& inflow,
                                         StationaryMethod method, double evolve_tol) {
  const RotationGraph& g = bu.base();
  StationaryDecomposition dec;
  dec.coefficients.assign(dual.face_count(), 0.0);
  for (int f = 0; f < dual.face_count(); ++f)
    if (is_kernel_face(dual.faces[f], coin)) dec.kernel_faces.push_back(f);

  ScatteringMatrix sm = scattering_matrix(g, dual.faces, coin);
  Eigen::VectorXcd beta = sm.full * inflow;
  for (int f : dual.external_faces())
    dec.external_parts.push_back(
        external_facial_function(bu, dual, f, coin, inflow, beta));

  if (method == StationaryMethod::Solve || method == StationaryMethod::Evolve) {
    if (method == StationaryMethod::Solve) {
      dec.state = fixed_point_solve(bu, coin, inflow);
    } else {
      EvolveResult res = evolve(bu, coin, inflow, evolve_tol);
      if (!res.converged)
        throw ValidationError("walk did not converge within the step limit");
      dec.state = std::move(res.state);
    }
    // read the kernel coefficients off the island amplitudes: on the islands
    // of an internal face, psi = -c_f * gamma_f and gamma_f starts at b
    for (int f : dec.kernel_faces) {
      const auto arcs = face_arcs(bu, dual.faces[f]);
      dec.coefficients[f] = -dec.state.internal[arcs[1]] / coin.b;
    }
    return dec;
  }

  Eigen::VectorXcd psi_ex = Eigen::VectorXcd::Zero(bu.arc_count());
  for (const auto& fn : dec.external_parts) psi_ex += fn.values;

  std::vector<FacialFunction> kernel_fns;
  for (int f : dec.kernel_faces)
    kernel_fns.push_back(internal_facial_function(bu, dual, f, coin));

  Eigen::VectorXcd psi = psi_ex;
  if (!kernel_fns.empty()) {
    const int p = static_cast<int>(kernel_fns.size());
    Eigen::MatrixXcd m;
    if (method == StationaryMethod::Gram) {
      if (static_cast<int>(dec.kernel_faces.size()) !=
          static_cast<int>(dual.internal_faces().size()))
        throw InternalError("omega = 1 but some internal face is off-kernel");
      m = gram_matrix(dual, coin).cast<std::complex<double>>();
    } else {
      m = numeric_gram(kernel_fns);
    }
    Eigen::VectorXcd rhs(p);
    for (int i = 0; i < p; ++i) rhs[i] = kernel_fns[i].values.dot(psi_ex);
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(m);
    if (ldlt.info() != Eigen::Success)
      throw InternalError("Gram matrix of independent facial functions not SPD");
    Eigen::VectorXcd c = ldlt.solve(rhs);
    for (int i = 0; i < p; ++i) {
      dec.coefficients[dec.kernel_faces[i]] = c[i];
      psi -= c[i] * kernel_fns[i].values;
    }
  }

  dec.state.internal = std::move(psi);
  dec.state.inflow = inflow;
  dec.state.outflow = std::move(beta);
  return dec;
}

std::vector<int> luminous_faces(const DualGraph& dual,
                                const StationaryDecomposition& dec,
                                double threshold) {
  std::vector<int> out;
  for (int f = 0; f < dual.face_count(); ++f) {
    if (dual.faces[f].external || std::abs(dec.coefficients[f]) > threshold)
      out.push_back(f);
  }
  return out;
}

double orthogonality_residual(const BlowUpGraph& bu, const DualGraph& dual,
                              const Coin& coin, const StationaryDecomposition& dec) {
  double worst = 0.0;
  for (int f : dec.kernel_faces) {
    FacialFunction fn = internal_facial_function(bu, dual, f, coin);
    worst = std::max(worst, std::abs(fn.values.dot(dec.state.internal)));
  }
  return worst;
}

}  // namespace fqw
