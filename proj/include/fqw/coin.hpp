#pragma once

#include <complex>

namespace fqw {

/// The local 2x2 unitary H = [[a,b],[c,d]] applied at every blow-up vertex.
/// Admissible coins have d real, no zero entry, and omega = -det H on the
/// unit circle; unitarity then forces a = -omega*d and c = omega*conj(b).
struct Coin {
  std::complex<double> a;
  std::complex<double> b;
  std::complex<double> c;
  double d = 0.0;
  std::complex<double> omega;
};

/// a = -omega*d, b = e^{i phi} sqrt(1-d^2), c = omega e^{-i phi} sqrt(1-d^2).
/// Covers every admissible coin up to this phase convention.
/// Requires 0 < |d| < 1 and |omega| = 1.
Coin make_coin(double d, std::complex<double> omega, double phi);

/// Accepts an arbitrary 2x2 matrix iff it is an admissible coin
/// (unitary to 1e-12, d real, every entry nonzero); reports which
/// invariant failed otherwise.
Coin validate_coin(std::complex<double> a, std::complex<double> b,
                   std::complex<double> c, std::complex<double> d);

}  // namespace fqw
