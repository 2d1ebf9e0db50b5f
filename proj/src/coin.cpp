#include "fqw/coin.hpp"

#include <cmath>

#include "fqw/errors.hpp"

namespace fqw {

namespace {
constexpr double kTol = 1e-12;
}

Coin make_coin(double d, std::complex<double> omega, double phi) {
  if (std::abs(std::abs(omega) - 1.0) > kTol)
    throw ValidationError("omega must lie on the unit circle");
  if (d == 0.0 || std::abs(d) >= 1.0)
    throw ValidationError("coin parameter d must satisfy 0 < |d| < 1");
  omega /= std::abs(omega);
  const double s = std::sqrt(1.0 - d * d);
  Coin h;
  h.a = -omega * d;
  h.b = std::polar(s, phi);
  h.c = omega * std::polar(s, -phi);
  h.d = d;
  h.omega = omega;
  return h;
}

Coin validate_coin(std::complex<double> a, std::complex<double> b,
                   std::complex<double> c, std::complex<double> d) {
  // columns orthonormal
  const double col1 = std::norm(a) + std::norm(c);
  const double col2 = std::norm(b) + std::norm(d);
  const std::complex<double> cross = std::conj(a) * b + std::conj(c) * d;
  if (std::abs(col1 - 1.0) > kTol || std::abs(col2 - 1.0) > kTol ||
      std::abs(cross) > kTol)
    throw ValidationError("coin matrix is not unitary");
  if (std::abs(d.imag()) > kTol)
    throw ValidationError("coin entry d is not real");
  if (std::abs(a) <= kTol || std::abs(b) <= kTol || std::abs(c) <= kTol ||
      std::abs(d) <= kTol)
    throw ValidationError("coin matrix has a zero entry (abcd != 0 required)");

  Coin h;
  h.a = a;
  h.b = b;
  h.c = c;
  h.d = d.real();
  h.omega = -(a * d.real() - b * c);
  if (std::abs(std::abs(h.omega) - 1.0) > kTol)
    throw InternalError("unitary coin with |det| != 1");
  if (std::abs(h.a + h.omega * h.d) > 10 * kTol)
    throw InternalError("coin violates a = -omega*d");
  return h;
}

}  // namespace fqw
