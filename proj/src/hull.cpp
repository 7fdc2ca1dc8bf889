#include "stochgeo/hull.hpp"

#include "stochgeo/error.hpp"
#include "stochgeo/lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace stochgeo {
namespace {

constexpr double kDefaultRelTol = 1e-9;

void check_dim(const HullSample& sample, const Vector& z) {
  if (z.size() != sample.dim())
    throw DimensionMismatch(static_cast<std::size_t>(sample.dim()),
                            static_cast<std::size_t>(z.size()));
}

// min over the unit simplex of |sum_i lambda_i y_i|_1 with y_i the columns
// of `shifted`; equals the best separation margin over |u|_inf <= 1.
LpResult separation_lp(const Matrix& shifted, double stop_tol) {
  const Index d = shifted.rows();
  const Index n = shifted.cols();
  Matrix a = Matrix::Zero(d + 1, n + 2 * d);
  a.topLeftCorner(d, n) = shifted;
  a.block(0, n, d, d).setIdentity();
  a.block(0, n + d, d, d) = -Matrix::Identity(d, d);
  a.row(d).head(n).setOnes();
  Vector b = Vector::Zero(d + 1);
  b(d) = 1.0;
  Vector c = Vector::Zero(n + 2 * d);
  c.tail(2 * d).setOnes();
  std::vector<Index> basis(static_cast<std::size_t>(d + 1));
  for (Index k = 0; k < d; ++k)
    basis[static_cast<std::size_t>(k)] = shifted(k, 0) <= 0.0 ? n + k : n + d + k;
  basis[static_cast<std::size_t>(d)] = 0;
  LpOptions options;
  options.tolerance = 1e-12;
  options.stop_at_or_below = stop_tol;
  return minimize_standard_form(a, b, c, options, &basis);
}

}  // namespace

double sample_circumradius(const HullSample& sample) {
  if (sample.size() == 0) return 0.0;
  const Vector centroid = sample.points.rowwise().mean();
  return (sample.points.colwise() - centroid).colwise().norm().maxCoeff();
}

Membership in_hull(const HullSample& sample, const Vector& z, std::optional<double> tol) {
  check_dim(sample, z);
  if (sample.size() < 1) throw std::invalid_argument("in_hull: empty sample");
  if (tol && !(*tol > 0.0)) throw std::invalid_argument("in_hull: tolerance must be positive");
  return HullMembership(sample, tol).classify(z);
}

HullMembership::HullMembership(const HullSample& sample, std::optional<double> tol)
    : sample_(&sample) {
  const Index d = sample.dim();
  const Index n = sample.size();
  if (n < 1) throw std::invalid_argument("HullMembership: empty sample");
  centroid_ = sample.points.rowwise().mean();
  const double radius = sample_circumradius(sample);
  scale_ = radius > 0.0 ? radius : std::max(1.0, centroid_.cwiseAbs().maxCoeff());
  tol_ = tol ? *tol : kDefaultRelTol * scale_;

  // Extreme points along +-e_i and +-(e_i +- e_j).
  std::vector<Index> picks;
  auto pick = [&](const Vector& u) {
    Index best = 0;
    (u.transpose() * sample.points).maxCoeff(&best);
    picks.push_back(best);
  };
  for (Index i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    pick(e);
    pick(-e);
    for (Index j = i + 1; j < d; ++j) {
      for (double s : {1.0, -1.0}) {
        Vector u = e;
        u(j) = s;
        pick(u);
        pick(-u);
      }
    }
  }
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  if (static_cast<Index>(picks.size()) < n) {
    core_.resize(d, static_cast<Index>(picks.size()));
    for (std::size_t k = 0; k < picks.size(); ++k)
      core_.col(static_cast<Index>(k)) = sample.points.col(picks[k]);
  }
}

Membership HullMembership::solve(const Matrix& points, const Vector& z) const {
  const Matrix shifted = (points.colwise() - z) / scale_;
  const double tol = tol_ / scale_;
  const LpResult res = separation_lp(shifted, tol);
  if (res.status == LpStatus::Stopped) return Membership::Inside;
  return res.objective > tol ? Membership::Outside : Membership::Inside;
}

Membership HullMembership::classify(const Vector& z) const {
  if (z.size() != sample_->dim())
    throw DimensionMismatch(static_cast<std::size_t>(sample_->dim()),
                            static_cast<std::size_t>(z.size()));
  const Vector away = z - centroid_;
  const double inf_norm = away.cwiseAbs().maxCoeff();
  if (inf_norm > 0.0) {
    const Vector u = away / inf_norm;
    const double margin = u.dot(z) - (u.transpose() * sample_->points).maxCoeff();
    if (margin > tol_) return Membership::Outside;
  }
  if (core_.cols() > 0 && solve(core_, z) == Membership::Inside) return Membership::Inside;
  return solve(sample_->points, z);
}

std::vector<Index> hull_vertices_2d(const Matrix& points) {
  if (points.rows() != 2) throw std::invalid_argument("hull_vertices_2d: points must be 2-d");
  const Index n = points.cols();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (points(0, a) != points(0, b)) return points(0, a) < points(0, b);
    return points(1, a) < points(1, b);
  });
  if (n < 3) return order;
  auto cross = [&](Index o, Index a, Index b) {
    return (points(0, a) - points(0, o)) * (points(1, b) - points(1, o)) -
           (points(1, a) - points(1, o)) * (points(0, b) - points(0, o));
  };
  std::vector<Index> hull(2 * static_cast<std::size_t>(n));
  std::size_t k = 0;
  for (Index idx : order) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], idx) <= 0.0) --k;
    hull[k++] = idx;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
    hull[k++] = *it;
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

double hull_area_2d(const Matrix& points) {
  const auto verts = hull_vertices_2d(points);
  if (verts.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Index p = verts[i];
    const Index q = verts[(i + 1) % verts.size()];
    twice += points(0, p) * points(1, q) - points(0, q) * points(1, p);
  }
  return 0.5 * std::abs(twice);
}

namespace {

// Quickhull in three dimensions with per-face outside sets.
class Hull3 {
 public:
  explicit Hull3(const Matrix& points) : pts_(points) {
    const Index n = points.cols();
    const Vector spread = points.rowwise().maxCoeff() - points.rowwise().minCoeff();
    const double scale = std::max(spread.maxCoeff(), points.cwiseAbs().maxCoeff());
    eps_ = 1e-12 * std::max(scale, 1e-300);
    if (n < 4) return;
    if (!initial_simplex()) return;
    std::vector<Index> rest;
    rest.reserve(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
      if (i != seed_[0] && i != seed_[1] && i != seed_[2] && i != seed_[3]) rest.push_back(i);
    std::vector<int> fresh;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) fresh.push_back(f);
    assign(rest, fresh);
    expand();
    full_dim_ = true;
  }

  double volume() const {
    if (!full_dim_) return 0.0;
    double six = 0.0;
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      const Eigen::Vector3d a = point(f.v[0]) - origin_;
      const Eigen::Vector3d b = point(f.v[1]) - origin_;
      const Eigen::Vector3d c = point(f.v[2]) - origin_;
      six += a.dot(b.cross(c));
    }
    return std::abs(six) / 6.0;
  }

 private:
  struct Face {
    Index v[3];
    Eigen::Vector3d normal;
    double offset = 0.0;
    std::vector<Index> outside;
    bool alive = true;
    int stamp = -1;
  };

  Eigen::Vector3d point(Index i) const { return pts_.col(i); }

  double dist(const Face& f, Index p) const { return f.normal.dot(point(p)) - f.offset; }

  static std::uint64_t key(Index a, Index b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  }

  bool initial_simplex() {
    const Index n = pts_.cols();
    Index i0 = 0;
    pts_.row(0).minCoeff(&i0);
    Index i1 = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double dd = (point(i) - point(i0)).norm();
      if (dd > best) best = dd, i1 = i;
    }
    if (best <= eps_) return false;
    const Eigen::Vector3d axis = (point(i1) - point(i0)).normalized();
    Index i2 = 0;
    best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const Eigen::Vector3d w = point(i) - point(i0);
      const double dd = (w - axis * axis.dot(w)).norm();
      if (dd > best) best = dd, i2 = i;
    }
    if (best <= eps_) return false;
    const Eigen::Vector3d nrm = (point(i1) - point(i0)).cross(point(i2) - point(i0)).normalized();
    Index i3 = 0;
    best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double dd = std::abs(nrm.dot(point(i) - point(i0)));
      if (dd > best) best = dd, i3 = i;
    }
    if (best <= eps_) return false;
    seed_ = {i0, i1, i2, i3};
    origin_ = 0.25 * (point(i0) + point(i1) + point(i2) + point(i3));
    add_face(i0, i1, i2);
    add_face(i0, i2, i3);
    add_face(i0, i3, i1);
    add_face(i1, i3, i2);
    return true;
  }

  // Adds the face with vertices a,b,c oriented away from origin_.
  int add_face(Index a, Index b, Index c) {
    Eigen::Vector3d nrm = (point(b) - point(a)).cross(point(c) - point(a));
    if (nrm.dot(point(a) - origin_) < 0.0) {
      std::swap(b, c);
      nrm = -nrm;
    }
    return push_face(a, b, c, nrm);
  }

  int push_face(Index a, Index b, Index c, Eigen::Vector3d nrm) {
    const double len = nrm.norm();
    if (len > 0.0) nrm /= len;
    Face f;
    f.v[0] = a;
    f.v[1] = b;
    f.v[2] = c;
    f.normal = nrm;
    f.offset = nrm.dot(point(a));
    const int id = static_cast<int>(faces_.size());
    faces_.push_back(std::move(f));
    edges_[key(a, b)] = id;
    edges_[key(b, c)] = id;
    edges_[key(c, a)] = id;
    return id;
  }

  void assign(const std::vector<Index>& candidates, const std::vector<int>& targets) {
    for (Index p : candidates) {
      for (int f : targets) {
        if (dist(faces_[static_cast<std::size_t>(f)], p) > eps_) {
          faces_[static_cast<std::size_t>(f)].outside.push_back(p);
          break;
        }
      }
    }
    for (int f : targets)
      if (!faces_[static_cast<std::size_t>(f)].outside.empty()) pending_.push_back(f);
  }

  void expand() {
    int stamp = 0;
    while (!pending_.empty()) {
      const int start = pending_.back();
      pending_.pop_back();
      Face& sf = faces_[static_cast<std::size_t>(start)];
      if (!sf.alive || sf.outside.empty()) continue;
      Index eye = sf.outside.front();
      double far = -1.0;
      for (Index p : sf.outside) {
        const double dd = dist(sf, p);
        if (dd > far) far = dd, eye = p;
      }
      ++stamp;
      std::vector<int> visible{start};
      faces_[static_cast<std::size_t>(start)].stamp = stamp;
      std::vector<std::pair<Index, Index>> horizon;
      for (std::size_t q = 0; q < visible.size(); ++q) {
        const auto& fv = faces_[static_cast<std::size_t>(visible[q])].v;
        const Index v3[3] = {fv[0], fv[1], fv[2]};
        for (int e = 0; e < 3; ++e) {
          const Index a = v3[e];
          const Index b = v3[(e + 1) % 3];
          const int nb = edges_.at(key(b, a));
          Face& nf = faces_[static_cast<std::size_t>(nb)];
          if (nf.stamp == stamp) continue;
          if (dist(nf, eye) > eps_) {
            nf.stamp = stamp;
            visible.push_back(nb);
          } else {
            horizon.emplace_back(a, b);
          }
        }
      }
      std::vector<Index> orphans;
      for (int v : visible) {
        Face& f = faces_[static_cast<std::size_t>(v)];
        for (Index p : f.outside)
          if (p != eye) orphans.push_back(p);
        f.outside.clear();
        f.alive = false;
        for (int e = 0; e < 3; ++e) {
          const auto it = edges_.find(key(f.v[e], f.v[(e + 1) % 3]));
          if (it != edges_.end() && it->second == v) edges_.erase(it);
        }
      }
      std::vector<int> created;
      created.reserve(horizon.size());
      for (const auto& [a, b] : horizon) {
        const Eigen::Vector3d nrm = (point(b) - point(a)).cross(point(eye) - point(a));
        created.push_back(push_face(a, b, eye, nrm));
      }
      assign(orphans, created);
    }
  }

  const Matrix& pts_;
  double eps_ = 0.0;
  bool full_dim_ = false;
  std::array<Index, 4> seed_{};
  Eigen::Vector3d origin_ = Eigen::Vector3d::Zero();
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::vector<int> pending_;
};

}  // namespace

double hull_volume_3d(const Matrix& points) {
  if (points.rows() != 3) throw std::invalid_argument("hull_volume_3d: points must be 3-d");
  return Hull3(points).volume();
}

double hull_volume_low_dim(const HullSample& sample) {
  if (sample.dim() == 2) return hull_area_2d(sample.points);
  if (sample.dim() == 3) return hull_volume_3d(sample.points);
  throw Error("use estimated path");
}

DeficitVolume deficit_volume(const ConvexBody& body, const HullSample& sample, Index probes,
                             const StreamKey& stream) {
  if (sample.dim() != body.dim())
    throw DimensionMismatch(static_cast<std::size_t>(body.dim()),
                            static_cast<std::size_t>(sample.dim()));
  if (body.dim() <= 3)
    return {std::max(0.0, volume(body) - hull_volume_low_dim(sample)), 0.0};
  return deficit_volume_mc(body, sample, probes, stream);
}

DeficitVolume deficit_volume_mc(const ConvexBody& body, const HullSample& sample, Index probes,
                                const StreamKey& stream) {
  if (sample.dim() != body.dim())
    throw DimensionMismatch(static_cast<std::size_t>(body.dim()),
                            static_cast<std::size_t>(sample.dim()));
  if (probes < 1) throw std::invalid_argument("deficit_volume: probes must be >= 1");
  const HullMembership oracle(sample);
  const Matrix z = sample_uniform(body, stream, probes);
  Index outside = 0;
  for (Index i = 0; i < probes; ++i)
    outside += oracle.classify(z.col(i)) == Membership::Outside;
  const double p = double(outside) / double(probes);
  const double vol = volume(body);
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / double(probes))};
}

}  // namespace stochgeo
