#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stochgeo {

// Pairwise summation. The result depends only on the order of `values`,
// never on how the values were produced, so parallel producers that write
// into fixed slots aggregate bit-identically.
double pairwise_sum(std::span<const double> values);

struct MeanAndError {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean and standard error of the mean (n-1 denominator).
MeanAndError mean_and_stderr(std::span<const double> values);

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fingerprint_hex(std::string_view text);

}  // namespace stochgeo
