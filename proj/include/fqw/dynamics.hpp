#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fqw/blowup.hpp"
#include "fqw/coin.hpp"

namespace fqw {

/// Amplitudes on the internal arcs A^BU plus the constant tail inflow and the
/// current outflow, both indexed by tail id. Tails themselves are never
/// materialized: their free shift dynamics with constant inflow reduces the
/// walk to the finite affine iteration psi' = (chi U chi*) psi + b*alpha.
struct ArcState {
  Eigen::VectorXcd internal;
  Eigen::VectorXcd inflow;
  Eigen::VectorXcd outflow;
};

ArcState zero_state(const BlowUpGraph& bu, const Eigen::VectorXcd& inflow);

/// One time step: at every non-boundary blow-up vertex the coin mixes the
/// incoming island/bridge pair into the outgoing one; at every quay the
/// inflow enters through b and the outflow leaves through c and d.
ArcState step(const BlowUpGraph& bu, const Coin& coin, const ArcState& state);

struct EvolveResult {
  ArcState state;
  int steps = 0;
  bool converged = false;
  std::vector<double> sup_diffs;      // per step
  std::vector<double> outflow_norms;  // per step
};

/// Iterates step() from the zero internal state until the sup-norm step
/// difference drops below tol or max_steps is reached. Non-convergence is a
/// reported status, not an error.
EvolveResult evolve(const BlowUpGraph& bu, const Coin& coin,
                    const Eigen::VectorXcd& inflow, double tol = 1e-10,
                    int max_steps = 100000);

/// Direct solve of (I - chi U chi*) psi = source. When faces with
/// omega^{|f|} = 1 exist the operator has a +1 eigenspace, the system is
/// singular-but-consistent, and the walk limit is the solution orthogonal to
/// that kernel; a complete orthogonal decomposition returns exactly that
/// minimum-norm solution, so no facial-function machinery enters here.
ArcState fixed_point_solve(const BlowUpGraph& bu, const Coin& coin,
                           const Eigen::VectorXcd& inflow);

/// Dense matrix of chi U chi* in the blow-up arc basis.
Eigen::MatrixXcd internal_evolution_matrix(const BlowUpGraph& bu, const Coin& coin);

/// Maximum residual of the bridge relations
///   psi(eps_is) = omega psi(e'_is),   psi(eps'_is) = omega psi(e_is),
///   psi(e_br) = (omega/b)(psi(e_is) + d psi(e'_is))   (and its reverse)
/// over every bridge of the state.
double key_lemma_residual(const BlowUpGraph& bu, const Coin& coin,
                          const Eigen::VectorXcd& psi);

}  // namespace fqw
