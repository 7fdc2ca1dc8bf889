#pragma once

#include "stochgeo/bodies.hpp"
#include "stochgeo/sampling.hpp"

#include <optional>
#include <vector>

namespace stochgeo {

// The points x_1, ..., x_n as columns of a d x n matrix.
struct HullSample {
  Matrix points;

  int dim() const noexcept { return static_cast<int>(points.rows()); }
  Index size() const noexcept { return points.cols(); }
};

enum class Membership { Inside, Outside };

// Max distance from the sample centroid to a sample point.
double sample_circumradius(const HullSample& sample);

// Convex-hull membership by separation LP. z is Outside iff some u with
// |u|_inf <= 1 has <u,z> > max_i <u,x_i> + tol. The default tolerance is
// 1e-9 times the sample circumradius.
Membership in_hull(const HullSample& sample, const Vector& z,
                   std::optional<double> tol = std::nullopt);

// Membership oracle for many queries against one sample. Queries first try
// a cheap separating direction, then an LP over a small core of extreme
// points (an Inside certificate), then the full LP.
class HullMembership {
 public:
  explicit HullMembership(const HullSample& sample,
                          std::optional<double> tol = std::nullopt);

  Membership classify(const Vector& z) const;
  double tolerance() const noexcept { return tol_; }

 private:
  Membership solve(const Matrix& points, const Vector& z) const;

  const HullSample* sample_;
  Matrix core_;
  Vector centroid_;
  double scale_ = 1.0;
  double tol_ = 0.0;
};

// Exact area (d = 2) or volume (d = 3) of the convex hull. Affinely
// dependent samples give 0. Throws for d > 3.
double hull_volume_low_dim(const HullSample& sample);

double hull_area_2d(const Matrix& points);
double hull_volume_3d(const Matrix& points);

// Indices of the planar hull vertices in counter-clockwise order
// (Andrew's monotone chain; collinear points dropped).
std::vector<Index> hull_vertices_2d(const Matrix& points);

struct DeficitVolume {
  double estimate = 0.0;
  double std_error = 0.0;
};

// vol(K \ conv(sample)). Exact for d <= 3 (probes ignored); for d > 3 a
// Monte Carlo estimate from `probes` uniform points of K.
DeficitVolume deficit_volume(const ConvexBody& body, const HullSample& sample,
                             Index probes, const StreamKey& stream);

// Monte Carlo path in any dimension; used to cross-check the exact path.
DeficitVolume deficit_volume_mc(const ConvexBody& body,
                                const HullSample& sample, Index probes,
                                const StreamKey& stream);

}  // namespace stochgeo
