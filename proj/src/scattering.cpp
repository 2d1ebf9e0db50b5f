#include "fqw/scattering.hpp"

#include <cmath>

#include "fqw/errors.hpp"

namespace fqw {

Eigen::MatrixXcd scattering_block(const FacialWalk& f, const Coin& coin) {
  if (!f.external)
    throw ValidationError("scattering blocks only exist for external faces");
  const int k = f.quay_count();
  const auto gaps = f.gaps();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(k, k);
  for (int j = 0; j < k; ++j)
    p(j, (j + k - 1) % k) = std::pow(coin.omega, gaps[(j + k - 1) % k]);

  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(k, k) - coin.a * p;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(lhs);
  if (!lu.isInvertible())
    throw InternalError("I - a P_f is singular despite |a| < 1");
  Eigen::MatrixXcd s = coin.b * coin.c * p * lu.inverse();
  s.diagonal().array() += coin.d;
  return s;
}

ScatteringMatrix scattering_matrix(const RotationGraph& g,
                                   const std::vector<FacialWalk>& faces,
                                   const Coin& coin) {
  const int n = g.boundary_count();
  ScatteringMatrix sm;
  sm.full = Eigen::MatrixXcd::Zero(n, n);
  int covered = 0;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    if (!faces[f].external) continue;
    Eigen::MatrixXcd block = scattering_block(faces[f], coin);
    std::vector<int> tails;
    for (int v : faces[f].quay_vertices) tails.push_back(g.tail_of_vertex(v));
    for (size_t i = 0; i < tails.size(); ++i)
      for (size_t j = 0; j < tails.size(); ++j)
        sm.full(tails[i], tails[j]) = block(i, j);
    covered += static_cast<int>(tails.size());
    sm.block_faces.push_back(f);
    sm.block_tails.push_back(std::move(tails));
    sm.blocks.push_back(std::move(block));
  }
  if (sm.blocks.empty())
    throw ValidationError("graph has no tails, so there is no scattering");
  if (covered != n)
    throw InternalError("external faces do not cover every tail exactly once");
  return sm;
}

std::vector<int> detect_embedding(const RotationGraph& g,
                                  const std::vector<FacialWalk>& faces,
                                  const Coin& coin, int source_vertex,
                                  double threshold) {
  const int t = source_vertex >= 0 && source_vertex < g.vertex_count()
                    ? g.tail_of_vertex(source_vertex)
                    : -1;
  if (t < 0)
    throw ValidationError("source vertex does not carry a tail");
  ScatteringMatrix sm = scattering_matrix(g, faces, coin);
  Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(g.boundary_count());
  alpha[t] = 1.0;
  Eigen::VectorXcd beta = sm.full * alpha;
  std::vector<int> support;
  for (int i = 0; i < beta.size(); ++i)
    if (std::abs(beta[i]) > threshold) support.push_back(g.boundary_vertices()[i]);
  return support;
}

}  // namespace fqw
