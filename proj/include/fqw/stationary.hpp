#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fqw/blowup.hpp"
#include "fqw/coin.hpp"
#include "fqw/dynamics.hpp"

namespace fqw {

/// An amplitude assignment supported on one facial walk plus the reverses of
/// its bridges. Internal functions carry b*omega^j on islands, omega^j on
/// bridges and d*omega^j on reverse bridges; external ones are pinned by the
/// eta values derived from the in/outflow. Arcs visited twice superpose.
struct FacialFunction {
  int face = -1;
  bool external = false;
  Eigen::VectorXcd values;  // dense over A^BU
  std::vector<int> support;
};

FacialFunction internal_facial_function(const BlowUpGraph& bu, const DualGraph& dual,
                                        int face, const Coin& coin);

/// Requires the outflow produced by the scattering matrix for this inflow.
FacialFunction external_facial_function(const BlowUpGraph& bu, const DualGraph& dual,
                                        int face, const Coin& coin,
                                        const Eigen::VectorXcd& inflow,
                                        const Eigen::VectorXcd& outflow);

/// Gram matrix of the internal facial functions from the closed-form entries
///   M[i][j] = 2d m_{ij} + 2|f_i| delta_{ij},
/// valid for omega = 1 with a single external face. Indexed by
/// dual.internal_faces() order.
Eigen::MatrixXd gram_matrix(const DualGraph& dual, const Coin& coin);

/// <x,y> = sum conj(x(e)) y(e), the convention used for every projection here.
Eigen::MatrixXcd numeric_gram(const std::vector<FacialFunction>& functions);

enum class StationaryMethod {
  Project,  // numeric Gram over the omega^{|f|}=1 faces; any omega
  Gram,     // closed-form Gram entries; omega = 1, single external face
  Solve,    // linear fixed-point solve
  Evolve,   // iterate the walk
};

struct StationaryDecomposition {
  ArcState state;
  std::vector<FacialFunction> external_parts;
  std::vector<std::complex<double>> coefficients;  // c_f per face id, 0 off-kernel
  std::vector<int> kernel_faces;  // internal faces with omega^{|f|} = 1
};

StationaryDecomposition stationary_state(const BlowUpGraph& bu, const DualGraph& dual,
                                         const Coin& coin,
                                         const Eigen::VectorXcd& inflow,
                                         StationaryMethod method = StationaryMethod::Project,
                                         double evolve_tol = 1e-10);

/// External faces plus internal faces with |c_f| above the threshold.
std::vector<int> luminous_faces(const DualGraph& dual,
                                const StationaryDecomposition& dec,
                                double threshold = 1e-10);

/// max_f |<gamma_f, psi>| over the kernel faces; the stationary state is the
/// unique fixed point orthogonal to all of them.
double orthogonality_residual(const BlowUpGraph& bu, const DualGraph& dual,
                              const Coin& coin, const StationaryDecomposition& dec);

}  // namespace fqw
