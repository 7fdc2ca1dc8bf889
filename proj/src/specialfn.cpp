#include "stochgeo/specialfn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace stochgeo {
namespace {

// Above this dimension factorials and Gamma are combined in log space.
constexpr int kLogSpaceDim = 15;

double log_unit_ball_volume(int d) {
  return 0.5 * d * std::log(std::numbers::pi) - std::lgamma(0.5 * d + 1.0);
}

void require_dim(int d, int min, const char* what) {
  if (d < min)
    throw std::domain_error(std::string(what) + ": dimension must be >= " +
                            std::to_string(min));
}

void check_cap(const CapGeometry& cap) {
  require_dim(cap.d, 1, "cap");
  if (!(cap.r > 0.0)) throw std::domain_error("cap: radius must be positive");
  const double slack = 1e-12 * cap.r;
  if (!(cap.height >= -slack && cap.height <= 2.0 * cap.r + slack))
    throw std::domain_error("cap: height outside [0, 2r]");
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be > 0");
  return std::tgamma(x);
}

double log_gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma_fn: argument must be > 0");
  return std::lgamma(x);
}

double unit_ball_volume(int d) {
  require_dim(d, 0, "unit_ball_volume");
  if (d > kLogSpaceDim) return std::exp(log_unit_ball_volume(d));
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double deficit_constant(int d) {
  require_dim(d, 2, "deficit_constant");
  const double dd = d;
  const double expo = 2.0 / (dd + 1.0);
  const double gamma_arg = (dd * dd + 1.0) / (dd + 1.0);
  if (d > kLogSpaceDim) {
    const double log_c = std::log(2.0) +
                         expo * (log_unit_ball_volume(d - 1) - std::log(dd + 1.0)) +
                         std::log(dd + 3.0) + std::lgamma(dd + 2.0) -
                         std::log(dd * dd + dd + 2.0) - std::log(dd * dd + 1.0) -
                         std::lgamma(gamma_arg);
    return std::exp(log_c);
  }
  return 2.0 * std::pow(unit_ball_volume(d - 1) / (dd + 1.0), expo) *
         (dd + 3.0) * std::tgamma(dd + 2.0) /
         ((dd * dd + dd + 2.0) * (dd * dd + 1.0) * std::tgamma(gamma_arg));
}

double ball_deficit_limit(int d, double r) {
  require_dim(d, 2, "ball_deficit_limit");
  if (!(r > 0.0)) throw std::domain_error("ball_deficit_limit: r must be > 0");
  const double dd = d;
  const double expo = 2.0 / (dd + 1.0);
  const double gamma_arg = (dd * dd + 1.0) / (dd + 1.0);
  if (d > kLogSpaceDim) {
    const double log_w =
        std::log(dd * dd + dd + 2.0) + std::log(dd * dd + 1.0) - std::log(2.0) -
        std::log(dd + 3.0) - std::lgamma(dd + 2.0) +
        expo * (std::log(dd + 1.0) + log_unit_ball_volume(d) -
                log_unit_ball_volume(d - 1)) +
        std::lgamma(gamma_arg) + std::log(dd) + log_unit_ball_volume(d) +
        dd * std::log(r);
    return std::exp(log_w);
  }
  const double kd = unit_ball_volume(d);
  // Surface area of the unit sphere times r^d: the deficit of B_r is r^d
  // times that of B_1 for every n.
  const double surface = dd * kd * std::pow(r, dd);
  return (dd * dd + dd + 2.0) * (dd * dd + 1.0) /
         (2.0 * (dd + 3.0) * std::tgamma(dd + 2.0)) *
         std::pow((dd + 1.0) * kd / unit_ball_volume(d - 1), expo) *
         std::tgamma(gamma_arg) * surface;
}

double affine_surface_area(const ConvexBody& body) {
  const int d = body.dim();
  const double dd = d;
  if (body.is_polytopal()) return 0.0;
  const double unit = dd * unit_ball_volume(d);
  if (const auto* ball = body.as<Ball>())
    return unit * std::pow(ball->radius, dd * (dd - 1.0) / (dd + 1.0));
  if (body.as<Ellipsoid>()) {
    const double det = std::abs(body.linear_map().determinant());
    return unit * std::pow(det, (dd - 1.0) / (dd + 1.0));
  }
  throw std::invalid_argument("affine_surface_area: unsupported body kind");
}

double cap_volume_exact(const CapGeometry& cap) {
  check_cap(cap);
  const double h = std::clamp(cap.height, 0.0, 2.0 * cap.r);
  const double full = unit_ball_volume(cap.d) * std::pow(cap.r, cap.d);
  if (h == 0.0) return 0.0;
  if (h > cap.r) return full - cap_volume_exact({cap.d, cap.r, 2.0 * cap.r - h});
  const double x = std::min(1.0, h * (2.0 * cap.r - h) / (cap.r * cap.r));
  return 0.5 * full * boost::math::ibeta(0.5 * (cap.d + 1), 0.5, x);
}

double cap_volume_quadrature(const CapGeometry& cap) {
  check_cap(cap);
  const double h = std::clamp(cap.height, 0.0, 2.0 * cap.r);
  if (h == 0.0) return 0.0;
  const double theta = 2.0 * std::asin(std::sqrt(h / (2.0 * cap.r)));
  const int d = cap.d;
  auto integrand = [d](double phi) { return std::pow(std::sin(phi), d); };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, theta, 20, 1e-14, &error);
  return unit_ball_volume(d - 1) * std::pow(cap.r, d) * integral;
}

CapBounds cap_volume_bounds(const CapGeometry& cap) {
  check_cap(cap);
  if (!(cap.height > 0.0) || cap.height > cap.r)
    throw std::domain_error("cap_volume_bounds: requires 0 < height <= r");
  const double dd = cap.d;
  const double k = unit_ball_volume(cap.d - 1) / (dd + 1.0);
  const double common = k * std::pow(cap.height, 0.5 * (dd + 1.0)) *
                        std::pow(cap.r, 0.5 * (dd - 1.0));
  CapBounds out;
  out.lower = 2.0 * std::pow(2.0 - cap.height / cap.r, 0.5 * (dd - 1.0)) * common;
  out.upper = std::pow(2.0, 0.5 * (dd + 1.0)) * common;
  return out;
}

double limit_constant_residual(int d, double r) {
  require_dim(d, 2, "limit_constant_residual");
  const double dd = d;
  const double vol = unit_ball_volume(d) * std::pow(r, dd);
  const double as = dd * unit_ball_volume(d) *
                    std::pow(r, dd * (dd - 1.0) / (dd + 1.0));
  const double lhs =
      deficit_constant(d) * ball_deficit_limit(d, r) / std::pow(vol, 2.0 / (dd + 1.0));
  return std::abs(lhs - as) / as;
}

}  // namespace stochgeo
