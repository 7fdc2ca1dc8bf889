#pragma once

#include "stochgeo/bodies.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace stochgeo {

// Identity of an independent random stream: a seed plus a path of indices
// (experiment, trial, draw block, ...). Equal keys replay identical draws.
struct StreamKey {
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> path;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

StreamKey substream(const StreamKey& stream, std::uint64_t index);

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Sequential view over the counter-based generator addressed by a StreamKey.
class RandomStream {
 public:
  explicit RandomStream(const StreamKey& key);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  // Standard normal via the inverse CDF.
  double normal();
  // Exp(1) via -log(U).
  double exponential();

 private:
  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_word_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int cursor_ = 4;
};

struct SamplingStats {
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
  double acceptance_rate() const {
    return proposals == 0 ? 1.0 : double(accepted) / double(proposals);
  }
};

// `count` i.i.d. uniform points of K as the columns of a dim x count matrix.
// Draws are consumed sequentially, so the first m columns for count >= m
// are the same for a given stream.
Matrix sample_uniform(const ConvexBody& body, const StreamKey& stream,
                      Index count, SamplingStats* stats = nullptr);
Matrix sample_uniform(const ConvexBody& body, RandomStream& rng, Index count,
                      SamplingStats* stats = nullptr);

}  // namespace stochgeo
