// Command-line front end: flags and an optional key = value config file are
// merged into one ExperimentConfig (flags win) and handed to stochgeo::run.
#include "stochgeo/cli.hpp"
#include "stochgeo/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

struct Flags {
  std::string body, ns, suite, out, config;
  stochgeo::Index n = 0, trials = 0, probes = 0;
  std::uint64_t seed = 0;
  int workers = 0, dmax = 0;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--body", f.body, "body spec, e.g. ball:d=2,r=1 or hpoly:file=poly.txt");
  cmd.add_option("--ns", f.ns, "comma-separated sample sizes, strictly increasing");
  cmd.add_option("--n", f.n, "single sample size / profile length");
  cmd.add_option("--trials", f.trials, "independent trials per row");
  cmd.add_option("--probes", f.probes, "Monte Carlo probes (d > 3 deficits, covariograms)");
  cmd.add_option("--seed", f.seed, "64-bit seed (default: $STOCHGEO_SEED, then 1)");
  cmd.add_option("--workers", f.workers, "worker threads; output does not depend on it");
  cmd.add_option("--out", f.out, "output file (directory for verify)");
  cmd.add_option("--suite", f.suite, "verify suite name or 'all'");
  cmd.add_option("--dmax", f.dmax, "largest dimension for constants");
  cmd.add_option("--config", f.config, "key = value config file; flags take precedence");
}

stochgeo::ExperimentConfig from_flags(const CLI::App& cmd, const Flags& f) {
  stochgeo::ExperimentConfig c;
  c.command = cmd.get_name();
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--body")) c.body = f.body;
  if (given("--ns")) c.ns = stochgeo::parse_index_list(f.ns);
  if (given("--n")) c.n = f.n;
  if (given("--trials")) c.trials = f.trials;
  if (given("--probes")) c.probes = f.probes;
  if (given("--seed")) c.seed = f.seed;
  if (given("--workers")) c.workers = f.workers;
  if (given("--out")) c.out = f.out;
  if (given("--suite")) c.suite = f.suite;
  if (given("--dmax")) c.dmax = f.dmax;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random polytope deficit experiments and verification suites"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"deficit", "estimate vol(K) - E(K,n) and its scaled value"},
      {"constants", "table of c(d), the ball limit and the consistency residual"},
      {"asa", "affine surface area and predicted limit of a body"},
      {"cap", "cap volumes and their sandwich bounds for a ball"},
      {"convolution", "covariogram profile along the first axis"},
      {"verify", "run verification suites"}};
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const CLI::App* cmd = app.get_subcommands().front();
    stochgeo::ExperimentConfig config = from_flags(*cmd, flags);
    if (cmd->count("--config")) {
      auto file = stochgeo::load_config(flags.config);
      if (!file.command.empty() && file.command != config.command)
        throw stochgeo::ParseError("config file is for command '" + file.command + "'", 0);
      config = stochgeo::overlay(file, config);
    }
    config = stochgeo::with_seed_environment(config, std::getenv("STOCHGEO_SEED"));
    return stochgeo::run(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
