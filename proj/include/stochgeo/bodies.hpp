#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stochgeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// normal·x <= offset
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

struct Ball {
  Vector center;
  double radius = 1.0;
};

// {x : (x - center)^T shape (x - center) <= 1}
struct Ellipsoid {
  Vector center;
  Matrix shape;
};

struct Box {
  Vector lo;
  Vector hi;
};

// Vertices are the d+1 columns of a d x (d+1) matrix.
struct Simplex {
  Matrix vertices;
};

struct HPolytope {
  std::vector<Halfspace> halfspaces;
  Vector interior;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for closed-form volumes
};

// A boundary point reached from an interior point. `normal` is empty where
// the outer normal is not unique (ridges and vertices of polytopal bodies);
// in that case rolling_radius is 0.
struct SurfacePoint {
  Vector x;
  std::optional<Vector> normal;
  double rolling_radius = 0.0;
};

// Immutable convex body. Copies share the validated geometry.
class ConvexBody {
 public:
  using Kind = std::variant<Ball, Ellipsoid, Box, Simplex, HPolytope>;

  static ConvexBody ball(Vector center, double radius);
  static ConvexBody unit_ball(int dim);
  static ConvexBody ellipsoid(Vector center, Matrix shape);
  // Axis-aligned ellipsoid centred at the origin with the given semi-axes.
  static ConvexBody ellipsoid_axes(const Vector& semi_axes);
  static ConvexBody box(Vector lo, Vector hi);
  static ConvexBody unit_box(int dim);
  static ConvexBody simplex(Matrix vertices);
  // Convex hull of 0, e_1, ..., e_d.
  static ConvexBody standard_simplex(int dim);
  static ConvexBody hpolytope(std::vector<Halfspace> halfspaces,
                              Vector interior);

  int dim() const noexcept;
  const Kind& kind() const noexcept;
  std::string_view kind_name() const noexcept;
  bool is_polytopal() const noexcept;

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&kind());
  }

  // Axis-aligned bounding box from support values in the +-e_j directions.
  const Vector& bbox_lo() const noexcept;
  const Vector& bbox_hi() const noexcept;
  // Half-diagonal of the bounding box; the scale for relative tolerances.
  double circumradius() const noexcept;
  // Centre for symmetric kinds, centroid for simplices, witness otherwise.
  const Vector& reference_point() const noexcept;
  // Unit-normal halfspaces for polytopal kinds; empty for smooth kinds.
  const std::vector<Halfspace>& facets() const noexcept;
  // Vertices (as columns) of a planar polytopal body, in counter-clockwise
  // order. Empty unless dim() == 2 and the body is polytopal.
  const Matrix& polygon() const noexcept;
  // Ellipsoid = center + transform * unit ball, transform = shape^{-1/2}.
  // Identity-scaled for balls; empty for other kinds.
  const Matrix& linear_map() const noexcept;
  const VolumeEstimate& volume_estimate() const noexcept;

 private:
  struct Data;
  explicit ConvexBody(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

// Closed-body membership with relative tolerance 1e-12 of the circumradius.
bool contains(const ConvexBody& body, const Vector& z);

// Membership that excludes a 1e-12 relative band around the boundary.
bool contains_strictly(const ConvexBody& body, const Vector& z);

// h_K(u) = max_{x in K} <u, x>.
double support(const ConvexBody& body, const Vector& u);

// Closed form for every kind except HPolytope in d > 3, which uses a
// seeded Monte Carlo estimate over the bounding box (see volume_estimate()).
double volume(const ConvexBody& body);

// Boundary point origin + s*dir with s = sup{s : origin + s*dir in K}.
SurfacePoint ray_boundary(const ConvexBody& body, const Vector& origin,
                          const Vector& dir);

// Halfspace text format: "a1 ... ad b" per line, then "interior x1 ... xd".
ConvexBody read_hpolytope(std::istream& in);
ConvexBody load_hpolytope(const std::string& path);
void write_hpolytope(std::ostream& out, const ConvexBody& body);

}  // namespace stochgeo
