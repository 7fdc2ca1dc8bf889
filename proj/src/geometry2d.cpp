#include "geometry2d.hpp"

namespace stochgeo::detail {

Polygon clip_polygon(const Polygon& poly, const Eigen::Vector2d& normal,
                     double offset) {
  Polygon out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& p = poly[i];
    const Eigen::Vector2d& q = poly[(i + 1) % n];
    const double fp = normal.dot(p) - offset;
    const double fq = normal.dot(q) - offset;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0))
      out.push_back(p + (fp / (fp - fq)) * (q - p));
  }
  return out;
}

double signed_area(const Polygon& poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    twice += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * twice;
}

Polygon intersect_convex(const Polygon& a, const Polygon& b) {
  Polygon out = a;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    const Eigen::Vector2d& p = b[i];
    const Eigen::Vector2d& q = b[(i + 1) % n];
    // Outward normal of a counter-clockwise edge.
    const Eigen::Vector2d normal(q.y() - p.y(), p.x() - q.x());
    out = clip_polygon(out, normal, normal.dot(p));
  }
  return out;
}

}  // namespace stochgeo::detail
