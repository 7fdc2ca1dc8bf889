#pragma once

#include <Eigen/Dense>

#include <vector>

namespace stochgeo::detail {

using Polygon = std::vector<Eigen::Vector2d>;

// Part of a convex polygon with normal.p <= offset (Sutherland-Hodgman step).
Polygon clip_polygon(const Polygon& poly, const Eigen::Vector2d& normal,
                     double offset);

// Signed shoelace area; positive for counter-clockwise order.
double signed_area(const Polygon& poly);

// Intersection of two convex polygons given counter-clockwise.
Polygon intersect_convex(const Polygon& a, const Polygon& b);

}  // namespace stochgeo::detail
