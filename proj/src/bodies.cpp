#include "stochgeo/bodies.hpp"

#include "geometry2d.hpp"
#include "stochgeo/error.hpp"
#include "stochgeo/hull.hpp"
#include "stochgeo/lp.hpp"
#include "stochgeo/numeric.hpp"
#include "stochgeo/sampling.hpp"
#include "stochgeo/specialfn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace stochgeo {

struct ConvexBody::Data {
  Kind kind;
  int dim = 0;
  Vector bbox_lo;
  Vector bbox_hi;
  double circumradius = 0.0;
  Vector reference;
  std::vector<Halfspace> facets;
  Matrix polygon;
  Matrix linear_map;
  VolumeEstimate volume;
  // Ellipsoid eigendecomposition: shape = axes_basis * diag(eigenvalues) * ^T.
  Vector eigenvalues;
  Matrix axes_basis;
  Matrix inverse_shape;
};

namespace {

constexpr double kContainsTol = 1e-12;
// A facet counts as tight at a boundary point within this relative distance.
constexpr double kTightTol = 1e-9;
constexpr Index kPolytopeVolumeProbes = 1000000;

void require_dim(int d) {
  if (d < 2) throw std::invalid_argument("body dimension must be >= 2");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

void check_dim(const ConvexBody& body, const Vector& z) {
  if (z.size() != body.dim())
    throw DimensionMismatch(static_cast<std::size_t>(body.dim()),
                            static_cast<std::size_t>(z.size()));
}

// max u.x over {a_i.x <= b_i} through the dual min (b - A w).y, A^T y = u,
// y >= 0, where w is the strictly interior witness.
double hpolytope_support(const std::vector<Halfspace>& facets,
                         const Vector& witness, const Vector& u) {
  const double norm = u.norm();
  const Vector dir = u / norm;
  const Index d = witness.size();
  const Index m = static_cast<Index>(facets.size());
  Matrix a(d, m);
  Vector cost(m);
  for (Index i = 0; i < m; ++i) {
    a.col(i) = facets[static_cast<std::size_t>(i)].normal;
    cost(i) = facets[static_cast<std::size_t>(i)].offset -
              facets[static_cast<std::size_t>(i)].normal.dot(witness);
  }
  const LpResult res = minimize_standard_form(a, dir, cost);
  if (res.status != LpStatus::Optimal) throw UnboundedError();
  return norm * (dir.dot(witness) + res.objective);
}

detail::Polygon clip_to_polygon(const std::vector<Halfspace>& facets,
                                const Vector& lo, const Vector& hi) {
  const Vector pad = 0.25 * (hi - lo) + Vector::Constant(2, 1e-9);
  detail::Polygon poly = {{lo(0) - pad(0), lo(1) - pad(1)},
                          {hi(0) + pad(0), lo(1) - pad(1)},
                          {hi(0) + pad(0), hi(1) + pad(1)},
                          {lo(0) - pad(0), hi(1) + pad(1)}};
  for (const auto& h : facets)
    poly = detail::clip_polygon(poly, Eigen::Vector2d(h.normal(0), h.normal(1)),
                                h.offset);
  return poly;
}

Matrix to_matrix(const detail::Polygon& poly) {
  Matrix out(2, static_cast<Index>(poly.size()));
  for (std::size_t i = 0; i < poly.size(); ++i)
    out.col(static_cast<Index>(i)) = poly[i];
  return out;
}

// Vertices of a 3-d H-polytope by enumerating facet triples.
Matrix enumerate_vertices_3d(const std::vector<Halfspace>& facets,
                             double scale) {
  std::vector<Eigen::Vector3d> verts;
  const std::size_t m = facets.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        Eigen::Matrix3d a;
        a.row(0) = facets[i].normal.transpose();
        a.row(1) = facets[j].normal.transpose();
        a.row(2) = facets[k].normal.transpose();
        if (std::abs(a.determinant()) < 1e-12) continue;
        const Eigen::Vector3d b(facets[i].offset, facets[j].offset,
                                facets[k].offset);
        const Eigen::Vector3d x = a.partialPivLu().solve(b);
        bool ok = true;
        for (const auto& h : facets)
          if (h.normal.dot(x) > h.offset + 1e-9 * scale) {
            ok = false;
            break;
          }
        if (ok) verts.push_back(x);
      }
  Matrix out(3, static_cast<Index>(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i)
    out.col(static_cast<Index>(i)) = verts[i];
  return out;
}

// max over |v| <= rho of (p+v)^T diag(alpha) (p+v).
double max_quadratic_on_ball(const Vector& alpha, const Vector& p, double rho) {
  const double amax = alpha.maxCoeff();
  const double scale = std::max(p.norm(), rho) + 1e-300;
  std::vector<bool> top(static_cast<std::size_t>(alpha.size()));
  double top_p2 = 0.0;
  for (Index i = 0; i < alpha.size(); ++i) {
    top[static_cast<std::size_t>(i)] = alpha(i) >= amax * (1.0 - 1e-12);
    if (top[static_cast<std::size_t>(i)]) top_p2 += p(i) * p(i);
  }
  auto value_at = [&](double nu) {
    double val = 0.0;
    for (Index i = 0; i < alpha.size(); ++i) {
      const double v = alpha(i) * p(i) / (nu - alpha(i));
      val += alpha(i) * (p(i) + v) * (p(i) + v);
    }
    return val;
  };
  if (top_p2 <= 1e-28 * scale * scale) {
    double rest2 = 0.0;
    double val = 0.0;
    for (Index i = 0; i < alpha.size(); ++i) {
      if (top[static_cast<std::size_t>(i)]) continue;
      const double v = alpha(i) * p(i) / (amax - alpha(i));
      rest2 += v * v;
      val += alpha(i) * (p(i) + v) * (p(i) + v);
    }
    if (rest2 <= rho * rho) return val + amax * (rho * rho - rest2);
  }
  auto phi = [&](double nu) {
    double s = 0.0;
    for (Index i = 0; i < alpha.size(); ++i) {
      const double v = alpha(i) * p(i) / (nu - alpha(i));
      s += v * v;
    }
    return s;
  };
  double lo = amax;
  double hi = amax + (alpha.cwiseProduct(p)).norm() / rho + 1e-300;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) > rho * rho ? lo : hi) = mid;
  }
  return value_at(hi);
}

// Largest rho with B(x - rho N, rho) inside the ellipsoid. The tangent
// balls are nested in rho, so containment is monotone and bisection applies.
double ellipsoid_rolling_radius(const Ellipsoid& ell, const Vector& x,
                                const Vector& normal) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(ell.shape);
  const Vector& alpha = eig.eigenvalues();
  const Matrix& basis = eig.eigenvectors();
  auto fits = [&](double rho) {
    const Vector p = basis.transpose() * (x - rho * normal - ell.center);
    return max_quadratic_on_ball(alpha, p, rho) <= 1.0 + 4e-16;
  };
  double lo = 0.0;
  double hi = 1.0 / std::sqrt(alpha.maxCoeff());
  if (fits(hi)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

ConvexBody::ConvexBody(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

int ConvexBody::dim() const noexcept { return data_->dim; }
const ConvexBody::Kind& ConvexBody::kind() const noexcept { return data_->kind; }
const Vector& ConvexBody::bbox_lo() const noexcept { return data_->bbox_lo; }
const Vector& ConvexBody::bbox_hi() const noexcept { return data_->bbox_hi; }
double ConvexBody::circumradius() const noexcept { return data_->circumradius; }
const Vector& ConvexBody::reference_point() const noexcept { return data_->reference; }
const std::vector<Halfspace>& ConvexBody::facets() const noexcept { return data_->facets; }
const Matrix& ConvexBody::polygon() const noexcept { return data_->polygon; }
const Matrix& ConvexBody::linear_map() const noexcept { return data_->linear_map; }
const VolumeEstimate& ConvexBody::volume_estimate() const noexcept { return data_->volume; }

std::string_view ConvexBody::kind_name() const noexcept {
  static constexpr std::string_view names[] = {"ball", "ellipsoid", "box",
                                               "simplex", "hpoly"};
  return names[data_->kind.index()];
}

bool ConvexBody::is_polytopal() const noexcept {
  return std::holds_alternative<Box>(data_->kind) ||
         std::holds_alternative<Simplex>(data_->kind) ||
         std::holds_alternative<HPolytope>(data_->kind);
}

ConvexBody ConvexBody::ball(Vector center, double radius) {
  const int d = static_cast<int>(center.size());
  require_dim(d);
  require_finite(center, "ball centre");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball radius must be positive");
  auto data = std::make_shared<Data>();
  data->dim = d;
  data->bbox_lo = center.array() - radius;
  data->bbox_hi = center.array() + radius;
  data->circumradius = 0.5 * (data->bbox_hi - data->bbox_lo).norm();
  data->reference = center;
  data->linear_map = radius * Matrix::Identity(d, d);
  data->volume = {unit_ball_volume(d) * std::pow(radius, d), 0.0};
  data->kind = Ball{std::move(center), radius};
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::unit_ball(int dim) {
  require_dim(dim);
  return ball(Vector::Zero(dim), 1.0);
}

ConvexBody ConvexBody::ellipsoid(Vector center, Matrix shape) {
  const int d = static_cast<int>(center.size());
  require_dim(d);
  require_finite(center, "ellipsoid centre");
  if (shape.rows() != d || shape.cols() != d)
    throw std::invalid_argument("ellipsoid shape must be d x d");
  if (!shape.allFinite())
    throw std::invalid_argument("ellipsoid shape: non-finite entry");
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * shape.cwiseAbs().maxCoeff())
    throw std::invalid_argument("ellipsoid shape must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(shape);
  if (!(eig.eigenvalues().minCoeff() > 0.0))
    throw std::invalid_argument("ellipsoid shape must be positive definite");
  auto data = std::make_shared<Data>();
  data->dim = d;
  data->eigenvalues = eig.eigenvalues();
  data->axes_basis = eig.eigenvectors();
  const Vector inv_sqrt = data->eigenvalues.cwiseSqrt().cwiseInverse();
  data->linear_map = data->axes_basis * inv_sqrt.asDiagonal() * data->axes_basis.transpose();
  data->inverse_shape = data->linear_map * data->linear_map;
  const Vector half = data->inverse_shape.diagonal().cwiseSqrt();
  data->bbox_lo = center - half;
  data->bbox_hi = center + half;
  data->circumradius = 0.5 * (data->bbox_hi - data->bbox_lo).norm();
  data->reference = center;
  data->volume = {unit_ball_volume(d) * inv_sqrt.prod(), 0.0};
  data->kind = Ellipsoid{std::move(center), std::move(shape)};
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::ellipsoid_axes(const Vector& semi_axes) {
  if (!(semi_axes.array() > 0.0).all())
    throw std::invalid_argument("ellipsoid semi-axes must be positive");
  const Vector diag = semi_axes.array().square().inverse();
  return ellipsoid(Vector::Zero(semi_axes.size()), diag.asDiagonal().toDenseMatrix());
}

ConvexBody ConvexBody::box(Vector lo, Vector hi) {
  const int d = static_cast<int>(lo.size());
  require_dim(d);
  if (hi.size() != d) throw DimensionMismatch(static_cast<std::size_t>(d), static_cast<std::size_t>(hi.size()));
  require_finite(lo, "box lo");
  require_finite(hi, "box hi");
  if (!(lo.array() < hi.array()).all())
    throw std::invalid_argument("box requires lo < hi componentwise");
  auto data = std::make_shared<Data>();
  data->dim = d;
  data->bbox_lo = lo;
  data->bbox_hi = hi;
  data->circumradius = 0.5 * (hi - lo).norm();
  data->reference = 0.5 * (lo + hi);
  for (int j = 0; j < d; ++j) {
    Vector e = Vector::Zero(d);
    e(j) = 1.0;
    data->facets.push_back({e, hi(j)});
    data->facets.push_back({-e, -lo(j)});
  }
  if (d == 2) {
    Matrix poly(2, 4);
    poly << lo(0), hi(0), hi(0), lo(0), lo(1), lo(1), hi(1), hi(1);
    data->polygon = poly;
  }
  data->volume = {(hi - lo).prod(), 0.0};
  data->kind = Box{std::move(lo), std::move(hi)};
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::unit_box(int dim) {
  require_dim(dim);
  return box(Vector::Zero(dim), Vector::Ones(dim));
}

ConvexBody ConvexBody::simplex(Matrix vertices) {
  const int d = static_cast<int>(vertices.rows());
  require_dim(d);
  if (vertices.cols() != d + 1)
    throw std::invalid_argument("simplex needs d+1 vertices");
  if (!vertices.allFinite())
    throw std::invalid_argument("simplex vertex: non-finite entry");
  const Vector v0 = vertices.col(0);
  Matrix edges(d, d);
  for (int i = 0; i < d; ++i) edges.col(i) = vertices.col(i + 1) - v0;
  const double det = edges.determinant();
  const double scale = edges.colwise().norm().maxCoeff();
  if (!(std::abs(det) > 1e-12 * std::pow(scale, d)))
    throw std::invalid_argument("simplex vertices are affinely dependent");
  const Matrix inv = edges.inverse();
  auto data = std::make_shared<Data>();
  data->dim = d;
  // Facet i (i >= 1) is barycentric coordinate i >= 0; facet 0 is
  // sum of the others <= 1.
  const Vector sum_rows = inv.colwise().sum().transpose();
  {
    const double n = sum_rows.norm();
    data->facets.push_back({sum_rows / n, (1.0 + sum_rows.dot(v0)) / n});
  }
  for (int i = 0; i < d; ++i) {
    const Vector row = inv.row(i).transpose();
    const double n = row.norm();
    data->facets.push_back({-row / n, -row.dot(v0) / n});
  }
  data->bbox_lo = vertices.rowwise().minCoeff();
  data->bbox_hi = vertices.rowwise().maxCoeff();
  data->circumradius = 0.5 * (data->bbox_hi - data->bbox_lo).norm();
  data->reference = vertices.rowwise().mean();
  if (d == 2) {
    Matrix poly = vertices;
    if (det < 0.0) poly.col(1).swap(poly.col(2));
    data->polygon = poly;
  }
  data->volume = {std::abs(det) / std::tgamma(d + 1.0), 0.0};
  data->kind = Simplex{std::move(vertices)};
  return ConvexBody(std::move(data));
}

ConvexBody ConvexBody::standard_simplex(int dim) {
  require_dim(dim);
  Matrix v = Matrix::Zero(dim, dim + 1);
  for (int i = 0; i < dim; ++i) v(i, i + 1) = 1.0;
  return simplex(std::move(v));
}

ConvexBody ConvexBody::hpolytope(std::vector<Halfspace> halfspaces, Vector interior) {
  const int d = static_cast<int>(interior.size());
  require_dim(d);
  require_finite(interior, "interior witness");
  if (halfspaces.size() < static_cast<std::size_t>(d) + 1)
    throw std::invalid_argument("hpolytope needs at least d+1 halfspaces");
  auto data = std::make_shared<Data>();
  data->dim = d;
  for (auto& h : halfspaces) {
    if (h.normal.size() != d)
      throw DimensionMismatch(static_cast<std::size_t>(d), static_cast<std::size_t>(h.normal.size()));
    require_finite(h.normal, "halfspace normal");
    if (!std::isfinite(h.offset)) throw std::invalid_argument("halfspace offset: non-finite");
    const double n = h.normal.norm();
    if (!(n > 0.0)) throw std::invalid_argument("halfspace normal must be nonzero");
    Halfspace unit{h.normal / n, h.offset / n};
    if (!(unit.normal.dot(interior) < unit.offset))
      throw std::invalid_argument("interior witness violates a halfspace");
    data->facets.push_back(std::move(unit));
  }
  data->bbox_lo.resize(d);
  data->bbox_hi.resize(d);
  for (int j = 0; j < d; ++j) {
    Vector e = Vector::Zero(d);
    e(j) = 1.0;
    data->bbox_hi(j) = hpolytope_support(data->facets, interior, e);
    data->bbox_lo(j) = -hpolytope_support(data->facets, interior, -e);
  }
  data->circumradius = 0.5 * (data->bbox_hi - data->bbox_lo).norm();
  data->reference = interior;
  if (d == 2) {
    const auto poly = clip_to_polygon(data->facets, data->bbox_lo, data->bbox_hi);
    data->polygon = to_matrix(poly);
    data->volume = {std::abs(detail::signed_area(poly)), 0.0};
  } else if (d == 3) {
    data->volume = {hull_volume_3d(enumerate_vertices_3d(data->facets, data->circumradius)), 0.0};
  }
  data->kind = HPolytope{std::move(halfspaces), std::move(interior)};
  if (d > 3) {
    RandomStream rng(StreamKey{0x766f6c756d65ULL, {}});
    const Vector width = data->bbox_hi - data->bbox_lo;
    Index hits = 0;
    Vector z(d);
    for (Index i = 0; i < kPolytopeVolumeProbes; ++i) {
      for (int j = 0; j < d; ++j) z(j) = data->bbox_lo(j) + width(j) * rng.uniform();
      bool inside = true;
      for (const auto& h : data->facets)
        if (h.normal.dot(z) > h.offset) {
          inside = false;
          break;
        }
      hits += inside;
    }
    const double p = double(hits) / double(kPolytopeVolumeProbes);
    const double box = width.prod();
    data->volume = {box * p, box * std::sqrt(p * (1.0 - p) / double(kPolytopeVolumeProbes))};
  }
  return ConvexBody(std::move(data));
}

bool contains(const ConvexBody& body, const Vector& z) {
  check_dim(body, z);
  const double tol = kContainsTol * body.circumradius();
  if (const auto* b = body.as<Ball>()) return (z - b->center).norm() <= b->radius + tol;
  if (const auto* e = body.as<Ellipsoid>()) {
    const Vector dz = z - e->center;
    const double q = dz.dot(e->shape * dz);
    const double min_axis = 1.0 / std::sqrt(e->shape.diagonal().maxCoeff());
    return std::sqrt(std::max(q, 0.0)) <= 1.0 + tol / min_axis;
  }
  for (const auto& h : body.facets())
    if (h.normal.dot(z) > h.offset + tol) return false;
  return true;
}

bool contains_strictly(const ConvexBody& body, const Vector& z) {
  check_dim(body, z);
  const double tol = kContainsTol * body.circumradius();
  if (const auto* b = body.as<Ball>()) return (z - b->center).norm() < b->radius - tol;
  if (const auto* e = body.as<Ellipsoid>()) {
    const Vector dz = z - e->center;
    const double q = dz.dot(e->shape * dz);
    const double min_axis = 1.0 / std::sqrt(e->shape.diagonal().maxCoeff());
    return std::sqrt(std::max(q, 0.0)) < 1.0 - tol / min_axis;
  }
  for (const auto& h : body.facets())
    if (h.normal.dot(z) >= h.offset - tol) return false;
  return true;
}

double support(const ConvexBody& body, const Vector& u) {
  check_dim(body, u);
  if (!(u.norm() > 0.0)) throw std::invalid_argument("support: direction must be nonzero");
  if (const auto* b = body.as<Ball>()) return b->center.dot(u) + b->radius * u.norm();
  if (const auto* e = body.as<Ellipsoid>()) {
    const Vector w = body.linear_map() * u;
    return e->center.dot(u) + w.norm();
  }
  if (const auto* b = body.as<Box>())
    return (b->lo.cwiseProduct(u)).cwiseMax(b->hi.cwiseProduct(u)).sum();
  if (const auto* s = body.as<Simplex>()) return (u.transpose() * s->vertices).maxCoeff();
  const auto& h = std::get<HPolytope>(body.kind());
  return hpolytope_support(body.facets(), h.interior, u);
}

double volume(const ConvexBody& body) { return body.volume_estimate().value; }

SurfacePoint ray_boundary(const ConvexBody& body, const Vector& origin, const Vector& dir) {
  check_dim(body, origin);
  check_dim(body, dir);
  if (std::abs(dir.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("ray_boundary: direction must be a unit vector");
  if (!contains_strictly(body, origin))
    throw std::invalid_argument("ray_boundary: origin not strictly interior");
  SurfacePoint out;

  if (const auto* b = body.as<Ball>()) {
    const Vector p = origin - b->center;
    const double pu = p.dot(dir);
    const double c = p.squaredNorm() - b->radius * b->radius;
    const double s = -pu + std::sqrt(std::max(pu * pu - c, 0.0));
    out.x = origin + s * dir;
    out.normal = ((out.x - b->center) / b->radius).normalized();
    out.rolling_radius = b->radius;
    return out;
  }
  if (const auto* e = body.as<Ellipsoid>()) {
    const Vector p = origin - e->center;
    const Vector au = e->shape * dir;
    const double qa = dir.dot(au);
    const double qb = 2.0 * p.dot(au);
    const double qc = p.dot(e->shape * p) - 1.0;
    const double root = std::sqrt(std::max(qb * qb - 4.0 * qa * qc, 0.0));
    const double s = qb > 0.0 ? -2.0 * qc / (qb + root) : (-qb + root) / (2.0 * qa);
    out.x = origin + s * dir;
    out.normal = (e->shape * (out.x - e->center)).normalized();
    out.rolling_radius = ellipsoid_rolling_radius(*e, out.x, *out.normal);
    return out;
  }

  const auto& facets = body.facets();
  if (body.as<Simplex>()) {
    double lo = 0.0;
    double hi = 4.0 * body.circumradius();
    while (hi - lo > 1e-12 * hi) {
      const double mid = 0.5 * (lo + hi);
      (contains(body, origin + mid * dir) ? lo : hi) = mid;
    }
    out.x = origin + lo * dir;
  } else {
    double s = std::numeric_limits<double>::infinity();
    for (const auto& h : facets) {
      const double rate = h.normal.dot(dir);
      if (rate > 0.0) s = std::min(s, (h.offset - h.normal.dot(origin)) / rate);
    }
    out.x = origin + s * dir;
  }
  const double tight_tol = kTightTol * body.circumradius();
  const Halfspace* tight = nullptr;
  int tight_count = 0;
  for (const auto& h : facets) {
    if (h.offset - h.normal.dot(out.x) <= tight_tol) {
      tight = &h;
      ++tight_count;
    }
  }
  if (tight_count != 1) return out;
  out.normal = tight->normal;
  double radius = std::numeric_limits<double>::infinity();
  for (const auto& h : facets) {
    if (&h == tight) continue;
    const double denom = 1.0 - h.normal.dot(tight->normal);
    if (denom > 1e-15) radius = std::min(radius, (h.offset - h.normal.dot(out.x)) / denom);
  }
  out.rolling_radius = std::isfinite(radius) ? std::max(radius, 0.0) : 0.0;
  return out;
}

namespace {

bool parse_number(std::string_view token, double& value) {
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last && std::isfinite(value);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

ConvexBody read_hpolytope(std::istream& in) {
  std::vector<Halfspace> halfspaces;
  std::optional<Vector> interior;
  std::size_t line_no = 0;
  std::size_t interior_line = 0;
  int d = -1;
  std::string line;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("hpoly line " + std::to_string(line_no) + ": " + msg, line_no);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    if (interior) throw fail("content after the interior line");
    const bool is_interior = tokens.front() == "interior";
    const std::size_t values = tokens.size() - (is_interior ? 1 : 0);
    if (d < 0) {
      if (is_interior) throw fail("interior line before any halfspace");
      if (values < 3) throw fail("a halfspace needs at least 2 coefficients and an offset");
      d = static_cast<int>(values) - 1;
    }
    const std::size_t expected = is_interior ? static_cast<std::size_t>(d) : static_cast<std::size_t>(d) + 1;
    if (values != expected)
      throw fail("expected " + std::to_string(expected) + " numbers, found " + std::to_string(values));
    Vector nums(static_cast<Index>(values));
    for (std::size_t k = 0; k < values; ++k) {
      const auto tok = tokens[k + (is_interior ? 1 : 0)];
      if (!parse_number(tok, nums(static_cast<Index>(k))))
        throw fail("malformed number '" + std::string(tok) + "'");
    }
    if (is_interior) {
      interior = nums;
      interior_line = line_no;
    } else {
      halfspaces.push_back({nums.head(d), nums(d)});
    }
  }
  if (!interior) {
    ++line_no;
    throw fail("missing 'interior' line");
  }
  try {
    return ConvexBody::hpolytope(std::move(halfspaces), std::move(*interior));
  } catch (const UnboundedError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError("hpoly line " + std::to_string(interior_line) + ": " + e.what(), interior_line);
  }
}

ConvexBody load_hpolytope(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open polytope file '" + path + "'");
  return read_hpolytope(in);
}

void write_hpolytope(std::ostream& out, const ConvexBody& body) {
  if (!body.is_polytopal()) throw std::invalid_argument("write_hpolytope: body is not polytopal");
  for (const auto& h : body.facets()) {
    for (Index j = 0; j < h.normal.size(); ++j) out << format_double(h.normal(j)) << ' ';
    out << format_double(h.offset) << '\n';
  }
  out << "interior";
  for (Index j = 0; j < body.dim(); ++j) out << ' ' << format_double(body.reference_point()(j));
  out << '\n';
}

}  // namespace stochgeo
