#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fqw/coin.hpp"
#include "fqw/rotation_graph.hpp"

namespace fqw {

/// Block-diagonal scattering matrix over the tails, one unitary block per
/// external face. Rows and columns of `full` follow tail ids (boundary
/// order); within a block the quays keep their facial-walk cyclic order.
struct ScatteringMatrix {
  Eigen::MatrixXcd full;
  std::vector<int> block_faces;                // face id per block
  std::vector<std::vector<int>> block_tails;   // tail ids per block, quay order
  std::vector<Eigen::MatrixXcd> blocks;
};

/// S_f = bc P_f(omega) (I - a P_f(omega))^{-1} + d I over the quays of one
/// external face, where P_f shifts cyclically with weight omega^{gap}.
Eigen::MatrixXcd scattering_block(const FacialWalk& f, const Coin& coin);

/// Direct sum of the blocks of every external face, in canonical face order.
ScatteringMatrix scattering_matrix(const RotationGraph& g,
                                   const std::vector<FacialWalk>& faces,
                                   const Coin& coin);

/// Feeds a unit inflow into the tail of source_vertex and returns the
/// boundary vertices whose outflow modulus exceeds the threshold.
std::vector<int> detect_embedding(const RotationGraph& g,
                                  const std::vector<FacialWalk>& faces,
                                  const Coin& coin, int source_vertex,
                                  double threshold = 1e-10);

}  // namespace fqw
