#pragma once

#include "stochgeo/bodies.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stochgeo {

// Everything a run depends on. Unset fields fall back to per-command
// defaults at run time, so configs can be layered (file, then flags).
struct ExperimentConfig {
  std::string command;
  std::optional<std::string> body;
  std::vector<Index> ns;
  std::optional<Index> n;
  std::optional<Index> trials;
  std::optional<Index> probes;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> suite;
  std::optional<std::string> out;
  std::optional<int> dmax;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// "key = value" lines in a fixed key order; unset keys are omitted.
std::string format_config(const ExperimentConfig& config);

// Inverse of format_config. Blank lines and '#' comments are skipped.
// Errors carry the 1-based line number.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

// Fields set in `top` replace those in `base`.
ExperimentConfig overlay(ExperimentConfig base, const ExperimentConfig& top);

// Checks that every integer field is positive; throws ParseError.
void validate(const ExperimentConfig& config);

// Canonical text of the fields that affect results (workers and the output
// path excluded), and its 64-bit hash.
std::string canonical_text(const ExperimentConfig& config);
std::string config_fingerprint(const ExperimentConfig& config);

// Grammar:
//   ball:d=<int>,r=<real> | ellipsoid:axes=<real>,<real>,... |
//   box:d=<int> | simplex:d=<int> | hpoly:file=<path>
// Errors carry the 0-based character offset of the offending token.
ConvexBody parse_body_spec(std::string_view spec);

// Comma-separated positive integers.
std::vector<Index> parse_index_list(std::string_view text);

}  // namespace stochgeo
