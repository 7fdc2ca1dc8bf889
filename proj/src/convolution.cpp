#include "stochgeo/convolution.hpp"

#include "geometry2d.hpp"
#include "stochgeo/error.hpp"
#include "stochgeo/hull.hpp"
#include "stochgeo/parallel.hpp"
#include "stochgeo/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stochgeo {
namespace {

void check_point(const ConvexBody& body, const Vector& x) {
  if (x.size() != body.dim())
    throw DimensionMismatch(static_cast<std::size_t>(body.dim()),
                            static_cast<std::size_t>(x.size()));
  if (!contains(body, x)) throw std::invalid_argument("covariogram: point not in body");
}

detail::Polygon to_polygon(const Matrix& m, const Vector& shift, double sign) {
  detail::Polygon out(static_cast<std::size_t>(m.cols()));
  for (Index i = 0; i < m.cols(); ++i)
    out[static_cast<std::size_t>(i)] = shift.head<2>() + sign * m.col(i).head<2>();
  return out;
}

bool has_exact_route(const ConvexBody& body) {
  return body.as<Ball>() || body.as<Ellipsoid>() || body.as<Box>() ||
         (body.dim() == 2 && body.polygon().cols() >= 3);
}

double exact_covariogram(const ConvexBody& body, const Vector& x) {
  if (const auto* b = body.as<Ball>())
    return lens_volume_by_height(body.dim(), b->radius, b->radius - (x - b->center).norm());
  if (const auto* e = body.as<Ellipsoid>()) {
    const Matrix& map = body.linear_map();
    const Vector y = map.partialPivLu().solve(x - e->center);
    return std::abs(map.determinant()) * lens_volume_by_height(body.dim(), 1.0, 1.0 - y.norm());
  }
  if (const auto* b = body.as<Box>()) {
    const Vector centre = 0.5 * (b->lo + b->hi);
    return ((b->hi - b->lo) - 2.0 * (x - centre).cwiseAbs()).cwiseMax(0.0).prod();
  }
  // Point reflection keeps counter-clockwise order.
  const auto a = to_polygon(body.polygon(), -x, 1.0);
  const auto b = to_polygon(body.polygon(), x, -1.0);
  return std::max(0.0, detail::signed_area(detail::intersect_convex(a, b)));
}

}  // namespace

CovariogramValue covariogram(const ConvexBody& body, const Vector& x,
                             const CovariogramOptions& options) {
  check_point(body, x);
  if (has_exact_route(body)) return {exact_covariogram(body, x), 0.0};
  return covariogram_mc(body, x, options.probes, options.stream);
}

CovariogramValue covariogram_mc(const ConvexBody& body, const Vector& x, Index probes,
                                const StreamKey& stream) {
  check_point(body, x);
  if (probes < 1) throw std::invalid_argument("covariogram_mc: probes must be >= 1");
  const Vector lo = (body.bbox_lo() - x).cwiseMax(x - body.bbox_hi());
  const Vector hi = (body.bbox_hi() - x).cwiseMin(x - body.bbox_lo());
  if (!((hi - lo).array() > 0.0).all()) return {0.0, 0.0};
  const Vector width = hi - lo;
  const double box = width.prod();
  RandomStream rng(stream);
  Vector z(body.dim());
  Index hits = 0;
  for (Index i = 0; i < probes; ++i) {
    for (Index j = 0; j < z.size(); ++j) z(j) = lo(j) + width(j) * rng.uniform();
    hits += contains(body, z + x) && contains(body, x - z);
  }
  const double p = double(hits) / double(probes);
  return {box * p, box * std::sqrt(p * (1.0 - p) / double(probes))};
}

double lens_volume_by_height(int d, double r, double height) {
  if (height <= 0.0) return 0.0;
  return 2.0 * cap_volume_exact({d, r, std::min(height, r)});
}

double lens_volume(int d, double r, double rho) {
  if (rho < 0.0) throw std::domain_error("lens_volume: rho must be >= 0");
  return lens_volume_by_height(d, r, r - rho);
}

double lens_height_for_volume(int d, double r, double t) {
  const double full = unit_ball_volume(d) * std::pow(r, d);
  if (!(t >= 0.0 && t <= full * (1.0 + 1e-14)))
    throw std::domain_error("lens_height_for_volume: t outside [0, vol(B_r)]");
  if (t == 0.0) return 0.0;
  double lo = 0.0;
  double hi = r;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    (lens_volume_by_height(d, r, mid) < t ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SymmetryPoint symmetry_point(const ConvexBody& body, const CovariogramOptions& options) {
  SymmetryPoint out;
  if (body.as<Ball>() || body.as<Ellipsoid>() || body.as<Box>()) {
    out.point = body.reference_point();
    out.max_value = volume(body);
    return out;
  }
  const bool exact = has_exact_route(body);
  const int d = body.dim();
  auto g = [&](const Vector& p) -> CovariogramValue {
    if (!contains(body, p)) return {-1.0, 0.0};
    return covariogram(body, p, options);
  };
  Vector best = body.reference_point();
  CovariogramValue best_val = g(best);
  const double radius = body.circumradius();
  double step = 0.25 * (body.bbox_hi() - body.bbox_lo()).minCoeff();
  const double floor = (exact ? 1e-9 : 1e-3) * radius;
  constexpr int kHalfWidth = 4;
  while (step > floor) {
    for (int sweep = 0; sweep < 64; ++sweep) {
      bool moved = false;
      for (int j = 0; j < d; ++j) {
        Vector cand_best = best;
        CovariogramValue cand_val = best_val;
        for (int k = -kHalfWidth; k <= kHalfWidth; ++k) {
          if (k == 0) continue;
          Vector p = best;
          p(j) += k * step;
          const auto v = g(p);
          if (v.value > cand_val.value) {
            cand_val = v;
            cand_best = p;
          }
        }
        if (cand_val.value > best_val.value) {
          best = cand_best;
          best_val = cand_val;
          moved = true;
        }
      }
      if (!moved) break;
    }
    step /= double(kHalfWidth);
  }
  out.point = best;
  out.max_value = best_val.value;
  out.max_std_error = best_val.std_error;
  out.precision = step * kHalfWidth;
  return out;
}

Vector convolution_point(const ConvexBody& body, const SymmetryPoint& centre,
                         const SurfacePoint& x, double t, const CovariogramOptions& options) {
  if (!(t > 0.0 && t < centre.max_value))
    throw std::domain_error("convolution_point: t outside (0, T)");
  if (const auto* b = body.as<Ball>()) {
    const Vector dir = (x.x - b->center).normalized();
    const double rho = b->radius - lens_height_for_volume(body.dim(), b->radius, t);
    return b->center + rho * dir;
  }
  const Vector span = x.x - centre.point;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const Vector p = centre.point + mid * span;
    const double g = contains(body, p) ? covariogram(body, p, options).value : 0.0;
    (g > t ? lo : hi) = mid;
  }
  return centre.point + 0.5 * (lo + hi) * span;
}

Vector convolution_point(const ConvexBody& body, const SurfacePoint& x, double t,
                         const CovariogramOptions& options) {
  return convolution_point(body, symmetry_point(body, options), x, t, options);
}

CovariogramProfile covariogram_profile(const ConvexBody& body, const Vector& direction,
                                       int count, const CovariogramOptions& options) {
  if (count < 2) throw std::invalid_argument("covariogram_profile: count must be >= 2");
  const SymmetryPoint centre = symmetry_point(body, options);
  CovariogramProfile out;
  out.direction = direction.normalized();
  out.origin = centre.point;
  out.max_value = centre.max_value;
  const SurfacePoint edge = ray_boundary(body, centre.point, out.direction);
  const double length = (edge.x - centre.point).norm();
  for (int k = 0; k < count; ++k) {
    const double rho = length * double(k) / double(count - 1);
    Vector p = centre.point + rho * out.direction;
    if (k == count - 1) p = edge.x;
    const auto v = covariogram(body, p, options);
    out.samples.push_back({rho, v.value, v.std_error});
  }
  return out;
}

double projection_measure_ball(int d, double r, double rho) {
  if (!(rho >= 0.0 && rho < r)) throw std::domain_error("projection_measure_ball: rho outside [0, r)");
  return unit_ball_volume(d - 1) * std::pow((r - rho) * (r + rho), 0.5 * (d - 1));
}

double projection_ratio_ball(int d, double r, double t) {
  const double full = unit_ball_volume(d) * std::pow(r, d);
  if (!(t > 0.0 && t < full)) throw std::domain_error("projection_ratio_ball: t outside (0, T)");
  const double h = lens_height_for_volume(d, r, t);
  const double rim2 = h * (2.0 * r - h);
  const double measure = unit_ball_volume(d - 1) * std::pow(rim2, 0.5 * (d - 1));
  return std::pow(t, double(d - 1) / double(d + 1)) / measure;
}

double projection_ratio_limit_ball(int d, double r) {
  const double dd = d;
  const double curvature = std::pow(r, -(dd - 1.0));
  return std::pow(curvature, 1.0 / (dd + 1.0)) *
         std::pow(2.0 / (dd + 1.0), (dd - 1.0) / (dd + 1.0)) *
         std::pow(unit_ball_volume(d - 1), -2.0 / (dd + 1.0));
}

std::vector<FluxCheckRow> flux_check_disk(double r, std::span<const double> ts) {
  if (!(r > 0.0)) throw std::domain_error("flux_check_disk: r must be > 0");
  const double total = std::numbers::pi * r * r;
  std::vector<FluxCheckRow> rows;
  for (double t : ts) {
    if (!(t >= 1e-12 * total && t <= (1.0 - 1e-3) * total))
      throw std::domain_error("flux_check_disk: t too close to 0 or T for stable differencing");
    const double step = 1e-4 * t;
    const double h_minus = lens_height_for_volume(2, r, t - step);
    const double h_plus = lens_height_for_volume(2, r, t + step);
    const double h = lens_height_for_volume(2, r, t);
    const double rho = r - h;
    FluxCheckRow row;
    row.t = t;
    row.rho = rho;
    row.g = lens_volume_by_height(2, r, h);
    // pi (rho_+^2 - rho_-^2) with the difference taken in cap heights.
    const double rho_sum = (r - h_plus) + (r - h_minus);
    row.lhs = std::numbers::pi * (h_minus - h_plus) * rho_sum / (2.0 * step);
    row.rhs = -2.0 * std::numbers::pi * rho / projection_measure_ball(2, r, rho);
    row.ratio = row.rhs / row.lhs;
    rows.push_back(row);
  }
  return rows;
}

double uncovered_probability_bound(int d, Index n, double t, double vol) {
  if (n < 1) throw std::domain_error("uncovered_probability_bound: n must be >= 1");
  if (!(vol > 0.0)) throw std::domain_error("uncovered_probability_bound: vol must be > 0");
  const double s = t / (2.0 * vol);
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("uncovered_probability_bound: s outside [0, 1]");
  double sum = 0.0;
  const Index top = std::min<Index>(d - 1, n);
  for (Index i = 0; i <= top; ++i) {
    double term = 0.0;
    if (s == 0.0) {
      term = i == 0 ? 1.0 : 0.0;
    } else if (s == 1.0) {
      term = i == n ? 1.0 : 0.0;
    } else {
      const double log_choose = std::lgamma(double(n) + 1.0) - std::lgamma(double(i) + 1.0) -
                                std::lgamma(double(n - i) + 1.0);
      term = std::exp(log_choose + double(i) * std::log(s) + double(n - i) * std::log1p(-s));
    }
    sum += term;
  }
  return 2.0 * sum;
}

ProbabilityEstimate uncovered_probability(const ConvexBody& body, const Vector& z, Index n,
                                          Index trials, const StreamKey& stream, int workers) {
  if (n < 1 || trials < 1) throw std::invalid_argument("uncovered_probability: n, trials >= 1");
  if (z.size() != body.dim())
    throw DimensionMismatch(static_cast<std::size_t>(body.dim()), static_cast<std::size_t>(z.size()));
  std::vector<unsigned char> missed(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, workers, [&](std::int64_t t) {
    const HullSample sample{sample_uniform(body, substream(stream, static_cast<std::uint64_t>(t)), n)};
    missed[static_cast<std::size_t>(t)] = in_hull(sample, z) == Membership::Outside;
  });
  Index count = 0;
  for (unsigned char m : missed) count += m;
  const double p = double(count) / double(trials);
  return {p, std::sqrt(p * (1.0 - p) / double(trials))};
}

}  // namespace stochgeo
