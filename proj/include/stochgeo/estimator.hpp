#pragma once

#include "stochgeo/bodies.hpp"
#include "stochgeo/sampling.hpp"

#include <vector>

namespace stochgeo {

struct DeficitEstimate {
  Index n = 0;
  Index trials = 0;
  Index probes = 0;
  double deficit_mean = 0.0;
  double deficit_stderr = 0.0;
  // deficit_mean / (vol(K)/n)^{2/(d+1)}
  double scaled = 0.0;
  double scaled_stderr = 0.0;
  StreamKey stream;
};

// Per-trial deficit volumes; trial t draws its n points from
// substream(stream, t).
std::vector<double> deficit_trials(const ConvexBody& body, Index n,
                                   Index trials, Index probes,
                                   const StreamKey& stream, int workers = 1);

DeficitEstimate estimate_deficit(const ConvexBody& body, Index n,
                                 Index trials, Index probes,
                                 const StreamKey& stream, int workers = 1);

// (n / vol)^{2/(d+1)}
double scale_factor(const ConvexBody& body, Index n);

// as(K) / c(d): the limit of the scaled deficit.
double predicted_limit(const ConvexBody& body);

struct TableOptions {
  // Reuse the same trial streams for every n (nested samples).
  bool common_random_numbers = false;
  int workers = 1;
};

struct ConvergenceRow {
  DeficitEstimate estimate;
  double predicted_limit = 0.0;
};

std::vector<ConvergenceRow> convergence_table(const ConvexBody& body,
                                              const std::vector<Index>& ns,
                                              Index trials, Index probes,
                                              const StreamKey& stream,
                                              const TableOptions& options = {});

}  // namespace stochgeo
