#include "doctest.h"

#include "stochgeo/specialfn.hpp"

#include <cmath>
#include <numbers>

using namespace stochgeo;

namespace {

constexpr double pi = std::numbers::pi;

// Reference values evaluated with mpmath at 40 digits.
constexpr double kGamma5Over3 = 0.9027452929509336112968586854363425236796;
constexpr double kC2 = 1.268036788994423318235707235127168547410;
constexpr double kC3 = 1.371428571428571428571428571428571428571;  // 48/35
constexpr double kW21 = 10.62872726435980052622005783552508885993;
constexpr double kW31 = 18.75344139612367739957547285450610200633;
constexpr double kEllipseAsa = 7.916317428905745746048556479529477311825;
constexpr double kCap3 = 0.25446900494077325231547411404563973362;

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace

TEST_CASE("gamma function values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(close(gamma_fn(0.5), std::sqrt(pi), 1e-14));
  CHECK(close(gamma_fn(5.0 / 3.0), kGamma5Over3, 1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
}

TEST_CASE("gamma satisfies the recurrence on a grid") {
  for (double x = 0.05; x < 30.0; x += 0.37)
    CHECK(close(gamma_fn(x + 1.0), x * gamma_fn(x), 1e-13));
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(close(unit_ball_volume(2), pi, 1e-15));
  CHECK(close(unit_ball_volume(3), 4.0 * pi / 3.0, 1e-15));
  // Log-space branch agrees with the recurrence kappa_d = 2 pi / d kappa_{d-2}.
  for (int d = 14; d <= 40; ++d)
    CHECK(close(unit_ball_volume(d), 2.0 * pi / d * unit_ball_volume(d - 2), 1e-13));
}

TEST_CASE("deficit constant") {
  CHECK(close(deficit_constant(2), kC2, 1e-13));
  CHECK(close(deficit_constant(3), kC3, 1e-13));
  for (int d = 2; d <= 20; ++d) CHECK(deficit_constant(d) > 0.0);
  // Continuity across the switch to log space.
  CHECK(std::isfinite(deficit_constant(16)));
  CHECK(deficit_constant(16) == doctest::Approx(deficit_constant(15)).epsilon(0.1));
}

TEST_CASE("ball deficit limit") {
  CHECK(close(ball_deficit_limit(2, 1.0), kW21, 1e-13));
  CHECK(close(ball_deficit_limit(3, 1.0), kW31, 1e-13));
  for (int d = 2; d <= 8; ++d)
    for (double r : {0.5, 2.0, 3.0})
      CHECK(close(ball_deficit_limit(d, r), ball_deficit_limit(d, 1.0) * std::pow(r, d), 1e-13));
}

TEST_CASE("affine surface area") {
  CHECK(close(affine_surface_area(ConvexBody::unit_ball(2)), 2.0 * pi, 1e-15));
  CHECK(affine_surface_area(ConvexBody::unit_box(2)) == 0.0);
  CHECK(affine_surface_area(ConvexBody::standard_simplex(3)) == 0.0);
  Vector axes(2);
  axes << 2.0, 1.0;
  CHECK(close(affine_surface_area(ConvexBody::ellipsoid_axes(axes)), kEllipseAsa, 1e-13));
}

TEST_CASE("affine surface area scaling rule for diagonal maps") {
  for (int d = 2; d <= 6; ++d) {
    Vector axes(d);
    for (int j = 0; j < d; ++j) axes(j) = 0.5 + 0.3 * j;
    const double det = axes.prod();
    const double ball = affine_surface_area(ConvexBody::unit_ball(d));
    const double expected = std::pow(det, double(d - 1) / double(d + 1)) * ball;
    CHECK(close(affine_surface_area(ConvexBody::ellipsoid_axes(axes)), expected, 1e-12));
  }
}

TEST_CASE("cap volume closed form and quadrature agree") {
  CHECK(close(cap_volume_exact({2, 1.0, 1.0}), pi / 2.0, 1e-14));
  CHECK(close(cap_volume_exact({3, 1.0, 0.3}), kCap3, 1e-13));
  for (int d = 2; d <= 8; ++d) {
    for (double r : {0.5, 1.0, 2.0}) {
      CHECK(close(cap_volume_exact({d, r, 2.0 * r}), unit_ball_volume(d) * std::pow(r, d), 1e-13));
      for (double frac = 0.05; frac < 2.0; frac += 0.15)
        CHECK(close(cap_volume_exact({d, r, frac * r}), cap_volume_quadrature({d, r, frac * r}), 1e-12));
    }
  }
  CHECK(cap_volume_exact({3, 1.0, 0.0}) == 0.0);
  CHECK_THROWS_AS(cap_volume_exact({3, 1.0, 2.5}), std::domain_error);
  CHECK_THROWS_AS(cap_volume_exact({3, 1.0, -0.1}), std::domain_error);
}

TEST_CASE("cap volume bounds") {
  const auto b3 = cap_volume_bounds({3, 1.0, 0.3});
  CHECK(b3.lower <= kCap3);
  CHECK(kCap3 <= b3.upper);
  const auto b2 = cap_volume_bounds({2, 1.0, 1.0});
  CHECK(b2.lower == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(b2.upper == doctest::Approx(std::pow(2.0, 1.5) * 2.0 / 3.0).epsilon(1e-14));
  CHECK(b2.lower <= pi / 2.0);
  CHECK(pi / 2.0 <= b2.upper);
  // The ratio upper/lower is (2/(2 - D/r))^{(d-1)/2} and pinches to 1.
  for (int d = 2; d <= 8; ++d) {
    const auto tiny = cap_volume_bounds({d, 1.0, 1e-9});
    CHECK(tiny.upper / tiny.lower == doctest::Approx(1.0).epsilon(1e-8));
    const auto half = cap_volume_bounds({d, 1.0, 0.5});
    CHECK(half.upper / half.lower == doctest::Approx(std::pow(2.0 / 1.5, 0.5 * (d - 1))).epsilon(1e-13));
  }
  CHECK_THROWS_AS(cap_volume_bounds({3, 1.0, 1.5}), std::domain_error);
  CHECK_THROWS_AS(cap_volume_bounds({3, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("sandwich holds on the full grid") {
  int violations = 0;
  for (int d = 2; d <= 8; ++d)
    for (double r : {0.5, 1.0, 2.0})
      for (int k = 1; k <= 20; ++k) {
        const CapGeometry cap{d, r, 0.05 * k * r};
        const double exact = cap_volume_exact(cap);
        const auto b = cap_volume_bounds(cap);
        violations += !(b.lower <= exact && exact <= b.upper);
      }
  CHECK(violations == 0);
}

TEST_CASE("small caps approach the leading-order term") {
  for (int d = 2; d <= 8; ++d) {
    const double r = 1.3;
    const double h = 1e-6 * r;
    const double leading = unit_ball_volume(d - 1) * std::pow(2.0 * r, 0.5 * (d - 1)) *
                           std::pow(h, 0.5 * (d + 1)) * 2.0 / (d + 1);
    CHECK(cap_volume_exact({d, r, h}) / leading == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("limit constant identity") {
  CHECK(limit_constant_residual(2, 1.0) < 1e-10);
  CHECK(limit_constant_residual(5, 1.0) < 1e-10);
  CHECK(limit_constant_residual(2, 3.0) < 1e-10);
  for (int d = 2; d <= 10; ++d)
    for (double r : {0.5, 1.0, 2.0}) CHECK(limit_constant_residual(d, r) < 1e-9);
  // Log-space branch as well.
  for (int d = 16; d <= 40; ++d) CHECK(limit_constant_residual(d, 1.0) < 1e-9);
}
