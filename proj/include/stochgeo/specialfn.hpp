#pragma once

#include "stochgeo/bodies.hpp"

namespace stochgeo {

// Gamma function for x > 0.
double gamma_fn(double x);
double log_gamma_fn(double x);

// vol_d(B^d) = pi^{d/2} / Gamma(d/2 + 1), d >= 0.
double unit_ball_volume(int d);

// Constant c(d) relating the limit of the scaled deficit of random
// polytopes to the affine surface area:
//   c(d) = 2 (vol_{d-1}(B^{d-1}) / (d+1))^{2/(d+1)}
//          * (d+3)(d+1)! / ((d^2+d+2)(d^2+1) Gamma((d^2+1)/(d+1))).
double deficit_constant(int d);

// lim_n n^{2/(d+1)} (vol(B_r) - E(B_r, n)) for the Euclidean ball of radius r.
// Scales as r^d, like the deficit itself.
double ball_deficit_limit(int d, double r);

// Integral of kappa^{1/(d+1)} over the boundary. Closed form for balls and
// ellipsoids, zero for polytopal bodies.
double affine_surface_area(const ConvexBody& body);

// Cap of height `height` cut from a d-ball of radius r.
struct CapGeometry {
  int d = 2;
  double r = 1.0;
  double height = 0.0;
};

double cap_volume_exact(const CapGeometry& cap);

// Independent route: r^d vol_{d-1}(B^{d-1}) * integral_0^theta sin^d,
// evaluated by adaptive Gauss-Kronrod quadrature.
double cap_volume_quadrature(const CapGeometry& cap);

struct CapBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Two-sided bounds
//   2 (2 - D/r)^{(d-1)/2} k D^{(d+1)/2} r^{(d-1)/2}
//     <= vol(cap) <= 2^{(d+1)/2} k D^{(d+1)/2} r^{(d-1)/2},
// with k = vol_{d-1}(B^{d-1})/(d+1). Asserted for 0 < D <= r only.
CapBounds cap_volume_bounds(const CapGeometry& cap);

// Relative residual of c(d) W(d,r) / vol(B_r)^{2/(d+1)} = as(B_r), which is
// an algebraic identity; the result measures floating-point error only.
double limit_constant_residual(int d, double r);

}  // namespace stochgeo
