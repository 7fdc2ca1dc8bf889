#include "doctest.h"

#include "stochgeo/error.hpp"
#include "stochgeo/parallel.hpp"
#include "stochgeo/sampling.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>

using namespace stochgeo;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

using Block = std::array<std::uint32_t, 4>;

double fraction_within(const Matrix& pts, double t) {
  Index hits = 0;
  for (Index j = 0; j < pts.cols(); ++j) hits += pts.col(j).norm() <= t;
  return double(hits) / double(pts.cols());
}

void check_fraction(const Matrix& pts, double t, double p) {
  const double sigma = std::sqrt(p * (1.0 - p) / double(pts.cols()));
  CHECK(std::abs(fraction_within(pts, t) - p) < 5.0 * sigma);
}

}  // namespace

TEST_CASE("philox known answers") {
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("substreams extend the path and are distinct") {
  const StreamKey root{1, {}};
  CHECK(substream(root, 0).path == std::vector<std::uint64_t>{0});
  CHECK(substream(substream(root, 3), 7).path == std::vector<std::uint64_t>{3, 7});
  CHECK_FALSE(substream(root, 0) == substream(root, 1));

  const auto disk = ConvexBody::unit_ball(2);
  const Matrix a = sample_uniform(disk, substream(root, 0), 1);
  const Matrix b = sample_uniform(disk, substream(root, 1), 1);
  CHECK((a - b).cwiseAbs().maxCoeff() > 0.0);

  // A path [0] must not collide with the root, nor [0, 0] with [0].
  RandomStream r0(root), r1(substream(root, 0)), r2(substream(substream(root, 0), 0));
  const auto x0 = r0.next_u64(), x1 = r1.next_u64(), x2 = r2.next_u64();
  CHECK(x0 != x1);
  CHECK(x1 != x2);
  RandomStream other_seed(StreamKey{2, {}});
  CHECK(other_seed.next_u64() != x0);
}

TEST_CASE("replaying a key gives identical draws") {
  const StreamKey key{42, {3, 7}};
  RandomStream a(key), b(key);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  const auto box = ConvexBody::unit_box(3);
  CHECK(sample_uniform(box, key, 1000) == sample_uniform(box, key, 1000));
  // Shorter requests are prefixes of longer ones.
  const Matrix longer = sample_uniform(ConvexBody::unit_ball(3), key, 500);
  const Matrix shorter = sample_uniform(ConvexBody::unit_ball(3), key, 200);
  CHECK(longer.leftCols(200) == shorter);
}

TEST_CASE("scalar draws stay in range") {
  RandomStream rng(StreamKey{9, {}});
  double sum = 0.0, sum2 = 0.0, esum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK_UNARY(u > 0.0 && u < 1.0);
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
    const double e = rng.exponential();
    CHECK_UNARY(e > 0.0);
    esum += e;
  }
  CHECK(std::abs(sum / n) < 5.0 / std::sqrt(double(n)));
  CHECK(std::abs(sum2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(esum / n - 1.0) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("box moments") {
  const Index count = 100000;
  const Matrix pts = sample_uniform(ConvexBody::unit_box(2), StreamKey{3, {}}, count);
  const double sigma = (1.0 / std::sqrt(12.0)) / std::sqrt(double(count));
  for (Index i = 0; i < 2; ++i) CHECK(std::abs(pts.row(i).mean() - 0.5) < 5.0 * sigma);
}

TEST_CASE("ball radial law") {
  const Index count = 100000;
  check_fraction(sample_uniform(ConvexBody::unit_ball(2), StreamKey{4, {}}, count), 0.5, 0.25);
  const Matrix pts3 = sample_uniform(ConvexBody::unit_ball(3), StreamKey{5, {}}, count);
  for (double t : {0.3, 0.7}) check_fraction(pts3, t, t * t * t);
}

TEST_CASE("simplex and ellipsoid moments") {
  const Index count = 100000;
  // Standard simplex in d = 3: mean 1/4 per coordinate, variance 3/80.
  const Matrix s = sample_uniform(ConvexBody::standard_simplex(3), StreamKey{6, {}}, count);
  const double sigma = std::sqrt(3.0 / 80.0 / double(count));
  for (Index i = 0; i < 3; ++i) CHECK(std::abs(s.row(i).mean() - 0.25) < 5.0 * sigma);
  // Ellipse with semi-axes (2, 1): E[x^2] = a^2/4.
  const Matrix e = sample_uniform(ConvexBody::ellipsoid_axes(vec({2.0, 1.0})), StreamKey{7, {}}, count);
  const double mx2 = e.row(0).squaredNorm() / double(count);
  // Var(x^2) = E x^4 - (E x^2)^2 = a^4/8 - a^4/16.
  CHECK(std::abs(mx2 - 1.0) < 5.0 * std::sqrt(1.0 / double(count)));
}

TEST_CASE("box histogram passes chi-square") {
  for (int d : {2, 3}) {
    const Index count = 1000000;
    const Matrix pts = sample_uniform(ConvexBody::unit_box(d), StreamKey{8, {std::uint64_t(d)}}, count);
    const int cells = 1 << (2 * d);
    std::vector<double> hist(static_cast<std::size_t>(cells), 0.0);
    for (Index j = 0; j < count; ++j) {
      int cell = 0;
      for (int i = 0; i < d; ++i) cell = 4 * cell + std::min(3, int(pts(i, j) * 4.0));
      hist[static_cast<std::size_t>(cell)] += 1.0;
    }
    const double expected = double(count) / cells;
    double chi2 = 0.0;
    for (double h : hist) chi2 += (h - expected) * (h - expected) / expected;
    const boost::math::chi_squared dist(cells - 1);
    const double critical = boost::math::quantile(boost::math::complement(dist, 0.001));
    CHECK(chi2 < critical);
  }
}

TEST_CASE("samples lie inside every body kind") {
  Matrix shape(3, 3);
  shape << 2.0, 0.3, 0.1, 0.3, 1.0, -0.2, 0.1, -0.2, 0.5;
  std::vector<Halfspace> hex;
  for (int k = 0; k < 6; ++k) {
    const double a = k * 3.14159265358979 / 3.0;
    hex.push_back({vec({std::cos(a), std::sin(a)}), 1.0});
  }
  const std::vector<ConvexBody> bodies = {
      ConvexBody::ball(vec({1.0, 2.0, 3.0}), 0.5), ConvexBody::ellipsoid(vec({0.0, 1.0, 0.0}), shape),
      ConvexBody::box(vec({-1.0, 0.0}), vec({0.0, 3.0})), ConvexBody::standard_simplex(4),
      ConvexBody::hpolytope(hex, vec({0.0, 0.0}))};
  for (const auto& body : bodies) {
    SamplingStats stats;
    const Matrix pts = sample_uniform(body, StreamKey{10, {}}, 5000, &stats);
    CHECK(pts.rows() == body.dim());
    CHECK(pts.cols() == 5000);
    for (Index j = 0; j < pts.cols(); ++j) CHECK(contains(body, pts.col(j)));
    CHECK(stats.accepted == 5000);
    CHECK(stats.acceptance_rate() > 0.0);
    CHECK(stats.acceptance_rate() <= 1.0);
  }
  // Hexagon fills 3*sqrt(3)/2 of its 2 x sqrt(3) bounding box: rate 3/4.
  SamplingStats stats;
  sample_uniform(ConvexBody::hpolytope(hex, vec({0.0, 0.0})), StreamKey{11, {}}, 100000, &stats);
  CHECK(stats.acceptance_rate() == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("thin polytope is rejected as infeasible") {
  // Sliver around the diagonal of the unit square, area ratio ~1e-9.
  const double w = 1e-9;
  std::vector<Halfspace> hs = {{vec({1, 0}), 1}, {vec({-1, 0}), 0}, {vec({0, 1}), 1}, {vec({0, -1}), 0},
                               {vec({1, -1}).normalized(), w}, {vec({-1, 1}).normalized(), w}};
  const auto sliver = ConvexBody::hpolytope(hs, vec({0.5, 0.5}));
  CHECK_THROWS_WITH_AS(sample_uniform(sliver, StreamKey{12, {}}, 10), "rejection infeasible", Error);
}

TEST_CASE("results do not depend on the worker count") {
  const auto ball = ConvexBody::unit_ball(4);
  const StreamKey root{13, {}};
  auto run = [&](int workers) {
    std::vector<double> out(64);
    parallel_for(out.size(), workers, [&](std::size_t t) {
      out[t] = sample_uniform(ball, substream(root, t), 100).sum();
    });
    return out;
  };
  CHECK(run(1) == run(4));
}

TEST_CASE("count must be positive") {
  CHECK_THROWS_AS(sample_uniform(ConvexBody::unit_ball(2), StreamKey{}, 0), std::invalid_argument);
}
