#pragma once

#include "stochgeo/bodies.hpp"
#include "stochgeo/sampling.hpp"

#include <span>
#include <vector>

namespace stochgeo {

struct CovariogramValue {
  double value = 0.0;
  double std_error = 0.0;
};

struct CovariogramOptions {
  // Probe count for the Monte Carlo route; exact routes ignore it.
  Index probes = 200000;
  StreamKey stream{0x636f7661ULL, {}};
};

// g(x) = vol((-x + K) ∩ (x - K)). Exact for balls, ellipsoids, boxes and
// planar polytopes; Monte Carlo over the intersection's bounding box
// otherwise, with common random numbers across x.
CovariogramValue covariogram(const ConvexBody& body, const Vector& x,
                             const CovariogramOptions& options = {});

// The Monte Carlo route for any kind.
CovariogramValue covariogram_mc(const ConvexBody& body, const Vector& x,
                                Index probes, const StreamKey& stream);

// Intersection of two balls of radius r whose centres are 2 rho apart:
// two caps of height r - rho.
double lens_volume(int d, double r, double rho);
// Same, parameterised by the cap height h = r - rho.
double lens_volume_by_height(int d, double r, double height);
// Inverse of lens_volume_by_height in h, for 0 <= t <= vol(B_r).
double lens_height_for_volume(int d, double r, double t);

struct SymmetryPoint {
  Vector point;
  double max_value = 0.0;  // T = max_y g(y)
  double max_std_error = 0.0;
  double precision = 0.0;  // final grid step of the search
};

// Maximiser of the covariogram. Centre of symmetric kinds with T = vol(K);
// nested-grid coordinate ascent otherwise.
SymmetryPoint symmetry_point(const ConvexBody& body,
                             const CovariogramOptions& options = {});

// The point of [centre, x] where g equals t, 0 < t < T, by bisection.
Vector convolution_point(const ConvexBody& body, const SymmetryPoint& centre,
                         const SurfacePoint& x, double t,
                         const CovariogramOptions& options = {});
Vector convolution_point(const ConvexBody& body, const SurfacePoint& x,
                         double t, const CovariogramOptions& options = {});

struct ProfileSample {
  double rho = 0.0;
  double g = 0.0;
  double g_std_error = 0.0;
};

// g sampled along the ray from the maximiser in `direction`.
struct CovariogramProfile {
  Vector direction;
  Vector origin;
  double max_value = 0.0;
  std::vector<ProfileSample> samples;
};

CovariogramProfile covariogram_profile(const ConvexBody& body,
                                       const Vector& direction, int count,
                                       const CovariogramOptions& options = {});

// vol_{d-1} of the projection of the lens for balls centred at +-rho u
// onto u's orthogonal complement: vol_{d-1}(B^{d-1}) (r^2 - rho^2)^{(d-1)/2}.
double projection_measure_ball(int d, double r, double rho);

// t^{(d-1)/(d+1)} / projection measure at the point where g = t, for the
// ball of radius r, and its t -> 0 limit
//   kappa^{1/(d+1)} (2/(d+1))^{(d-1)/(d+1)} vol_{d-1}(B^{d-1})^{-2/(d+1)}
// with kappa = r^{-(d-1)}.
double projection_ratio_ball(int d, double r, double t);
double projection_ratio_limit_ball(int d, double r);

// d/dt vol(K_t) by central differences against the boundary-flux formula
// -perimeter(K_t) / projection measure, on the disk of radius r.
struct FluxCheckRow {
  double t = 0.0;
  double rho = 0.0;
  double g = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // rhs / lhs
};

std::vector<FluxCheckRow> flux_check_disk(double r,
                                          std::span<const double> ts);

// 2 sum_{i<d} C(n,i) s^i (1-s)^{n-i}, s = t / (2 vol), upper bound on the
// probability that a point of the boundary of K_t is not covered.
double uncovered_probability_bound(int d, Index n, double t, double vol);

struct ProbabilityEstimate {
  double p = 0.0;
  double std_error = 0.0;
};

// Fraction of `trials` random n-point samples of K whose hull misses z.
ProbabilityEstimate uncovered_probability(const ConvexBody& body,
                                          const Vector& z, Index n,
                                          Index trials,
                                          const StreamKey& stream,
                                          int workers = 1);

}  // namespace stochgeo
