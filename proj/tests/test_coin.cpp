#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fqw/coin.hpp"
#include "fqw/errors.hpp"

using namespace fqw;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

double unitarity_defect(const Coin& h) {
  double c1 = std::abs(std::norm(h.a) + std::norm(h.c) - 1.0);
  double c2 = std::abs(std::norm(h.b) + h.d * h.d - 1.0);
  double cross = std::abs(std::conj(h.a) * h.b + std::conj(h.c) * h.d);
  return std::max({c1, c2, cross});
}

}  // namespace

TEST_CASE("reflection coin from d = -cos(pi/3)") {
  Coin h = make_coin(-std::cos(pi / 3), 1.0, 0.0);
  CHECK(h.a.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(h.b.real() == doctest::Approx(std::sqrt(3) / 2).epsilon(1e-14));
  CHECK(h.c.real() == doctest::Approx(std::sqrt(3) / 2).epsilon(1e-14));
  CHECK(h.d == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(std::abs(h.omega - 1.0) < 1e-14);
}

TEST_CASE("make_coin(0.5, 1, 0) is unitary with a = -1/2") {
  Coin h = make_coin(0.5, 1.0, 0.0);
  CHECK(std::abs(h.a - cd(-0.5, 0)) < 1e-14);
  CHECK(std::abs(h.b - cd(std::sqrt(3) / 2, 0)) < 1e-14);
  CHECK(unitarity_defect(h) < 1e-14);
}

TEST_CASE("make_coin with complex omega fixes -det H = omega") {
  cd omega = std::polar(1.0, pi / 3);
  Coin h = make_coin(0.5, omega, 0.0);
  CHECK(std::abs(h.a + omega * 0.5) < 1e-14);
  cd det = h.a * h.d - h.b * h.c;
  CHECK(std::abs(-det - omega) < 1e-14);
}

TEST_CASE("make_coin domain errors") {
  CHECK_THROWS_AS(make_coin(0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(make_coin(1.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(make_coin(-1.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(make_coin(0.5, cd(0.5, 0.0), 0.0), ValidationError);
}

TEST_CASE("validate_coin rejects the identity (zero b, c)") {
  CHECK_THROWS_AS(validate_coin(1, 0, 0, 1), ValidationError);
}

TEST_CASE("validate_coin accepts the reflection and Hadamard forms") {
  double s = std::sqrt(3) / 2;
  Coin r = validate_coin(0.5, s, s, -0.5);
  CHECK(std::abs(r.omega - 1.0) < 1e-12);
  double h2 = 1 / std::sqrt(2);
  Coin h = validate_coin(h2, h2, h2, -h2);
  CHECK(std::abs(h.omega - 1.0) < 1e-12);
}

TEST_CASE("validate_coin rejects non-unitary and non-real d") {
  CHECK_THROWS_AS(validate_coin(0.5, 0.5, 0.5, 0.5), ValidationError);
  CHECK_THROWS_AS(validate_coin(0.6, cd(0, 0.8), 0.8, cd(0, -0.6)), ValidationError);
}

TEST_CASE("round trip over random admissible parameters") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> du(-0.99, 0.99);
  std::uniform_real_distribution<double> dphase(0, 2 * pi);
  int done = 0;
  while (done < 100) {
    double d = du(rng);
    if (std::abs(d) < 0.01) continue;
    cd omega = std::polar(1.0, dphase(rng));
    double phi = dphase(rng);
    Coin h = make_coin(d, omega, phi);
    Coin back = validate_coin(h.a, h.b, h.c, h.d);
    CHECK(std::abs(back.d - d) < 1e-12);
    CHECK(std::abs(back.omega - omega) < 1e-12);
    CHECK(std::abs(back.a + back.omega * back.d) < 1e-12);
    CHECK(unitarity_defect(h) < 1e-12);
    ++done;
  }
}
