#include "stochgeo/estimator.hpp"

#include "stochgeo/hull.hpp"
#include "stochgeo/numeric.hpp"
#include "stochgeo/parallel.hpp"
#include "stochgeo/specialfn.hpp"

#include <cmath>
#include <stdexcept>

namespace stochgeo {

std::vector<double> deficit_trials(const ConvexBody& body, Index n, Index trials, Index probes,
                                   const StreamKey& stream, int workers) {
  if (n < 1) throw std::invalid_argument("estimate_deficit: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("estimate_deficit: trials must be >= 1");
  std::vector<double> out(static_cast<std::size_t>(trials));
  parallel_for(trials, workers, [&](std::int64_t t) {
    const StreamKey trial = substream(stream, static_cast<std::uint64_t>(t));
    const HullSample sample{sample_uniform(body, trial, n)};
    out[static_cast<std::size_t>(t)] =
        deficit_volume(body, sample, probes, substream(trial, 1)).estimate;
  });
  return out;
}

double scale_factor(const ConvexBody& body, Index n) {
  return std::pow(double(n) / volume(body), 2.0 / (body.dim() + 1.0));
}

DeficitEstimate estimate_deficit(const ConvexBody& body, Index n, Index trials, Index probes,
                                 const StreamKey& stream, int workers) {
  if (trials < 2) throw std::invalid_argument("estimate_deficit: trials must be >= 2");
  const auto values = deficit_trials(body, n, trials, probes, stream, workers);
  const MeanAndError stats = mean_and_stderr(values);
  const double factor = scale_factor(body, n);
  DeficitEstimate est;
  est.n = n;
  est.trials = trials;
  est.probes = body.dim() <= 3 ? 0 : probes;
  est.deficit_mean = stats.mean;
  est.deficit_stderr = stats.std_error;
  est.scaled = stats.mean * factor;
  est.scaled_stderr = stats.std_error * factor;
  est.stream = stream;
  return est;
}

double predicted_limit(const ConvexBody& body) {
  return affine_surface_area(body) / deficit_constant(body.dim());
}

std::vector<ConvergenceRow> convergence_table(const ConvexBody& body, const std::vector<Index>& ns,
                                              Index trials, Index probes, const StreamKey& stream,
                                              const TableOptions& options) {
  for (std::size_t i = 1; i < ns.size(); ++i)
    if (ns[i] <= ns[i - 1]) throw std::invalid_argument("convergence_table: ns must be strictly increasing");
  const double limit = predicted_limit(body);
  std::vector<ConvergenceRow> rows;
  rows.reserve(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const StreamKey row_stream = options.common_random_numbers ? stream : substream(stream, i);
    rows.push_back({estimate_deficit(body, ns[i], trials, probes, row_stream, options.workers), limit});
  }
  return rows;
}

}  // namespace stochgeo
