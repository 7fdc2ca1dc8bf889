#include "doctest.h"

#include "stochgeo/estimator.hpp"
#include "stochgeo/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace stochgeo;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Test-side planar hull area: Andrew's chain over a handful of points.
double small_hull_area(std::array<std::array<double, 2>, 4> p) {
  std::sort(p.begin(), p.end());
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::array<std::array<double, 2>, 8> h{};
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (int i = 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  double s = 0.0;
  for (int i = 0; i + 1 < k; ++i) s += h[i][0] * h[i + 1][1] - h[i + 1][0] * h[i][1];
  return 0.5 * s;
}

}  // namespace

TEST_CASE("two points in the disk leave the whole disk") {
  const auto est = estimate_deficit(ConvexBody::unit_ball(2), 2, 10, 0, StreamKey{60, {}});
  CHECK(est.deficit_mean == std::numbers::pi);
  CHECK(est.deficit_stderr == 0.0);
  CHECK(est.n == 2);
  CHECK(est.trials == 10);
}

TEST_CASE("four points in the square against a brute-force oracle") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unif;
  const int configs = 10000000;
  double sum = 0.0;
  for (int c = 0; c < configs; ++c) {
    std::array<std::array<double, 2>, 4> p;
    for (auto& q : p) q = {unif(rng), unif(rng)};
    sum += 1.0 - small_hull_area(p);
  }
  const double oracle = sum / configs;
  // The known closed form 1 - 11/72 anchors the oracle itself.
  CHECK(oracle == doctest::Approx(61.0 / 72.0).epsilon(1e-3));

  const auto est = estimate_deficit(ConvexBody::unit_box(2), 4, 200000, 0, StreamKey{62, {}});
  CHECK(est.deficit_stderr > 0.0);
  CHECK(std::abs(est.deficit_mean - oracle) < 5.0 * est.deficit_stderr);
}

TEST_CASE("scaled value identity and invariants") {
  const auto disk = ConvexBody::unit_ball(2);
  const auto table = convergence_table(disk, {10, 100, 1000}, 20, 0, StreamKey{63, {}});
  REQUIRE(table.size() == 3);
  for (const auto& row : table) {
    const auto& e = row.estimate;
    const double identity = e.deficit_mean * std::pow(double(e.n) / volume(disk), 2.0 / 3.0);
    CHECK(std::abs(e.scaled - identity) <= 1e-12 * identity);
    CHECK(e.scaled == doctest::Approx(e.deficit_mean * scale_factor(disk, e.n)).epsilon(1e-14));
    CHECK(e.deficit_mean >= 0.0);
    CHECK(e.deficit_mean <= volume(disk));
    CHECK(e.deficit_stderr >= 0.0);
    CHECK(row.predicted_limit == doctest::Approx(4.955049697069333).epsilon(1e-13));
    CHECK(e.stream.seed == 63);
  }
}

TEST_CASE("predicted limits") {
  CHECK(predicted_limit(ConvexBody::unit_ball(2)) == doctest::Approx(4.955049697069333).epsilon(1e-13));
  CHECK(predicted_limit(ConvexBody::unit_ball(3)) == doctest::Approx(9.16297857297023).epsilon(1e-13));
  CHECK(predicted_limit(ConvexBody::unit_box(2)) == 0.0);
  CHECK(predicted_limit(ConvexBody::standard_simplex(3)) == 0.0);
  // Affine invariance: the ellipse (2,1) and the disk of equal area.
  const auto ellipse = ConvexBody::ellipsoid_axes(vec({2.0, 1.0}));
  const auto disk = ConvexBody::ball(vec({0.0, 0.0}), std::sqrt(2.0));
  CHECK(predicted_limit(ellipse) == doctest::Approx(predicted_limit(disk)).epsilon(1e-13));
}

TEST_CASE("unnormalised ball limit scales as r^d") {
  for (int d : {2, 3, 4}) {
    for (double r : {0.5, 2.0}) {
      const auto ball = ConvexBody::ball(Vector::Zero(d), r);
      const double unnormalised = predicted_limit(ball) * std::pow(volume(ball), 2.0 / (d + 1));
      CHECK(unnormalised == doctest::Approx(ball_deficit_limit(d, r)).epsilon(1e-12));
      CHECK(ball_deficit_limit(d, r) == doctest::Approx(ball_deficit_limit(d, 1.0) * std::pow(r, d)).epsilon(1e-13));
    }
  }
}

TEST_CASE("ellipse and disk of equal area give matching scaled deficits") {
  const auto ellipse = ConvexBody::ellipsoid_axes(vec({2.0, 1.0}));
  const auto disk = ConvexBody::ball(vec({0.0, 0.0}), std::sqrt(2.0));
  // Same stream: the ellipse sample is a linear image of the disk sample.
  const auto a = estimate_deficit(ellipse, 300, 100, 0, StreamKey{64, {}});
  const auto b = estimate_deficit(disk, 300, 100, 0, StreamKey{64, {}});
  CHECK(a.scaled == doctest::Approx(b.scaled).epsilon(1e-9));
  const auto c = estimate_deficit(disk, 300, 100, 0, StreamKey{65, {}});
  CHECK(std::abs(a.scaled - c.scaled) < 3.0 * std::hypot(a.scaled_stderr, c.scaled_stderr));
}

TEST_CASE("deficit decreases with n under common random numbers") {
  TableOptions options;
  options.common_random_numbers = true;
  const auto table = convergence_table(ConvexBody::unit_ball(2), {1000, 10000}, 200, 0, StreamKey{66, {}}, options);
  const auto& lo = table[0].estimate;
  const auto& hi = table[1].estimate;
  CHECK(lo.deficit_mean - hi.deficit_mean > 5.0 * std::hypot(lo.deficit_stderr, hi.deficit_stderr));
  // Nested samples make the decrease hold trial by trial.
  const auto small = deficit_trials(ConvexBody::unit_ball(2), 1000, 50, 0, StreamKey{66, {}});
  const auto large = deficit_trials(ConvexBody::unit_ball(2), 10000, 50, 0, StreamKey{66, {}});
  for (std::size_t t = 0; t < small.size(); ++t) CHECK(large[t] <= small[t]);
}

TEST_CASE("results do not depend on the worker count") {
  const auto ball = ConvexBody::unit_ball(4);
  const auto one = estimate_deficit(ball, 200, 8, 4000, StreamKey{67, {}}, 1);
  const auto three = estimate_deficit(ball, 200, 8, 4000, StreamKey{67, {}}, 3);
  CHECK(one.deficit_mean == three.deficit_mean);
  CHECK(one.deficit_stderr == three.deficit_stderr);
  CHECK(one.probes == 4000);
  const auto disk_one = estimate_deficit(ConvexBody::unit_ball(2), 500, 64, 0, StreamKey{68, {}}, 1);
  const auto disk_four = estimate_deficit(ConvexBody::unit_ball(2), 500, 64, 0, StreamKey{68, {}}, 4);
  CHECK(disk_one.scaled == disk_four.scaled);
}

TEST_CASE("argument checks") {
  const auto disk = ConvexBody::unit_ball(2);
  CHECK_THROWS_AS(estimate_deficit(disk, 10, 1, 0, StreamKey{}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_deficit(disk, 0, 5, 0, StreamKey{}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_table(disk, {100, 100}, 5, 0, StreamKey{}), std::invalid_argument);
  CHECK_THROWS_AS(convergence_table(disk, {100, 10}, 5, 0, StreamKey{}), std::invalid_argument);
}

TEST_CASE("simulated ball deficit scales as r^d") {
  // Same stream: the radius-r sample is r times the unit sample.
  for (int d : {2, 3}) {
    const auto unit = estimate_deficit(ConvexBody::unit_ball(d), 200, 20, 0, StreamKey{69, {}});
    const auto big = estimate_deficit(ConvexBody::ball(Vector::Zero(d), 2.0), 200, 20, 0, StreamKey{69, {}});
    CHECK(big.deficit_mean == doctest::Approx(unit.deficit_mean * std::pow(2.0, d)).epsilon(1e-9));
    // The scaled value is r^{d(d-1)/(d+1)} times, like as(B_r).
    CHECK(big.scaled == doctest::Approx(unit.scaled * std::pow(2.0, d * (d - 1.0) / (d + 1.0))).epsilon(1e-9));
  }
}
