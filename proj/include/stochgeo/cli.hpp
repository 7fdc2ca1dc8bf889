#pragma once

#include "stochgeo/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stochgeo {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// RFC 4180 style: fields containing commas or quotes are quoted.
std::string to_csv(const Table& table);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  Table table;
  std::vector<Check> checks;
  // Values that are reported but deliberately not asserted.
  std::vector<std::string> notes;

  bool passed() const;
};

const std::vector<std::string>& suite_names();

// Fills per-command defaults so the fingerprint names the full run.
ExperimentConfig with_defaults(ExperimentConfig config);

// Uses `env_seed` (the STOCHGEO_SEED value, may be null) when no seed is set.
ExperimentConfig with_seed_environment(ExperimentConfig config, const char* env_seed);

// Runs one verify suite. Unset config fields take the suite's defaults.
SuiteResult run_suite(const std::string& name, const ExperimentConfig& config);

// Executes a command. CSV goes to config.out (a file; a directory for
// verify) or to `out`; reports and errors go to `log`.
// Exit codes: 0 success, 1 failed verify check, 2 configuration error.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

}  // namespace stochgeo
