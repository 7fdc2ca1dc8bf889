#include "stochgeo/sampling.hpp"

#include "stochgeo/error.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <stdexcept>

namespace stochgeo {
namespace {

constexpr std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

// Max attempts before an HPolytope is declared infeasible for rejection.
constexpr std::int64_t kRejectionPilot = 100000;

}  // namespace

StreamKey substream(const StreamKey& stream, std::uint64_t index) {
  StreamKey child = stream;
  child.path.push_back(index);
  return child;
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

RandomStream::RandomStream(const StreamKey& stream) {
  std::uint64_t h = splitmix(stream.seed);
  std::uint64_t depth = 0;
  for (std::uint64_t idx : stream.path) {
    ++depth;
    h = splitmix(h ^ splitmix(idx ^ (depth * 0x632be59bd9b4e019ULL)));
  }
  h = splitmix(h ^ (depth << 56));
  key_ = {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  stream_word_ = splitmix(h ^ 0xa0761d6478bd642fULL);
}

std::uint64_t RandomStream::next_u64() {
  if (cursor_ >= 4) {
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_word_),
                          static_cast<std::uint32_t>(stream_word_ >> 32)},
                         key_);
    ++block_;
    cursor_ = 0;
  }
  const std::uint64_t lo = buffer_[cursor_];
  const std::uint64_t hi = buffer_[cursor_ + 1];
  cursor_ += 2;
  return (hi << 32) | lo;
}

double RandomStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * uniform());
}

double RandomStream::exponential() { return -std::log(uniform()); }

Matrix sample_uniform(const ConvexBody& body, const StreamKey& stream,
                      Index count, SamplingStats* stats) {
  RandomStream rng(stream);
  return sample_uniform(body, rng, count, stats);
}

Matrix sample_uniform(const ConvexBody& body, RandomStream& rng, Index count,
                      SamplingStats* stats) {
  if (count < 1) throw std::invalid_argument("sample_uniform: count must be >= 1");
  const int d = body.dim();
  Matrix out(d, count);
  SamplingStats local;

  auto unit_ball_point = [&](auto&& col) {
    double norm2 = 0.0;
    for (int j = 0; j < d; ++j) {
      col(j) = rng.normal();
      norm2 += col(j) * col(j);
    }
    const double radius = std::pow(rng.uniform(), 1.0 / d);
    col *= radius / std::sqrt(norm2);
  };

  if (const auto* ball = body.as<Ball>()) {
    for (Index i = 0; i < count; ++i) {
      auto col = out.col(i);
      unit_ball_point(col);
      col = ball->center + ball->radius * col;
    }
  } else if (const auto* ell = body.as<Ellipsoid>()) {
    const Matrix& map = body.linear_map();
    Vector y(d);
    for (Index i = 0; i < count; ++i) {
      unit_ball_point(y);
      out.col(i) = ell->center + map * y;
    }
  } else if (const auto* box = body.as<Box>()) {
    for (Index i = 0; i < count; ++i)
      for (int j = 0; j < d; ++j)
        out(j, i) = box->lo(j) + (box->hi(j) - box->lo(j)) * rng.uniform();
  } else if (const auto* simplex = body.as<Simplex>()) {
    Vector w(d + 1);
    for (Index i = 0; i < count; ++i) {
      for (int k = 0; k <= d; ++k) w(k) = rng.exponential();
      w /= w.sum();
      out.col(i) = simplex->vertices * w;
    }
  } else {
    const Vector& lo = body.bbox_lo();
    const Vector width = body.bbox_hi() - lo;
    const auto& facets = body.facets();
    Vector z(d);
    for (Index i = 0; i < count; ++i) {
      for (;;) {
        for (int j = 0; j < d; ++j) z(j) = lo(j) + width(j) * rng.uniform();
        ++local.proposals;
        bool inside = true;
        for (const auto& h : facets) {
          if (h.normal.dot(z) > h.offset) {
            inside = false;
            break;
          }
        }
        if (inside) break;
        if (local.accepted == 0 && local.proposals >= kRejectionPilot)
          throw Error("rejection infeasible");
      }
      ++local.accepted;
      out.col(i) = z;
    }
  }
  if (local.proposals == 0) local.proposals = local.accepted = count;
  if (stats) *stats = local;
  return out;
}

}  // namespace stochgeo
