#include "doctest.h"

#include "stochgeo/cli.hpp"
#include "stochgeo/error.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace stochgeo;

namespace {

std::size_t error_position(std::string_view spec) {
  try {
    parse_body_spec(spec);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct Captured {
  int code;
  std::string out;
  std::string log;
};

Captured capture(const ExperimentConfig& config) {
  std::ostringstream out, log;
  const int code = run(config, out, log);
  return {code, out.str(), log.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "stochgeo_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("body specs") {
  const auto disk = parse_body_spec("ball:d=2,r=1");
  CHECK(disk.dim() == 2);
  CHECK(volume(disk) == doctest::Approx(std::numbers::pi));
  const auto ellipse = parse_body_spec("ellipsoid:axes=2,1");
  CHECK(ellipse.dim() == 2);
  CHECK(volume(ellipse) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(volume(parse_body_spec("box:d=3")) == doctest::Approx(1.0));
  CHECK(volume(parse_body_spec("simplex:d=3")) == doctest::Approx(1.0 / 6.0));
  CHECK(parse_body_spec("ball:d=4,r=0.5").kind_name() == std::string("ball"));

  CHECK(error_position("ball:d=1,r=1") == 7);
  CHECK(error_position("ball:d=x,r=1") == 7);
  CHECK(error_position("ball:d=2") == 8);
  CHECK(error_position("ball:d=2,r=-1") == 11);
  CHECK(error_position("ball:d=2,q=1") == 9);
  CHECK(error_position("ball:d=2,r=1,extra") == 12);
  CHECK(error_position("ellipsoid:axes=2,,1") == 17);
  CHECK(error_position("ellipsoid:axes=2") == 15);
  CHECK(error_position("cone:d=2") == 0);
  CHECK(error_position("ball") == 4);
  CHECK_THROWS_AS(parse_body_spec("hpoly:file=/nonexistent/poly.txt"), Error);
}

TEST_CASE("hpoly bodies load from files") {
  const auto path = scratch("square.txt");
  {
    std::ofstream f(path);
    f << "1 0 1\n-1 0 0\n0 1 1\n0 -1 0\ninterior 0.5 0.5\n";
  }
  const auto body = parse_body_spec("hpoly:file=" + path.string());
  CHECK(body.kind_name() == std::string("hpoly"));
  CHECK(volume(body) == doctest::Approx(1.0));
}

TEST_CASE("config text round-trips") {
  ExperimentConfig c;
  c.command = "deficit";
  c.body = "ellipsoid:axes=2,1";
  c.ns = {100, 1000};
  c.trials = 50;
  c.probes = 1000;
  c.seed = 18446744073709551615ULL;
  c.workers = 4;
  c.out = "out.csv";
  const std::string text = format_config(c);
  CHECK(parse_config(text) == c);
  CHECK(format_config(parse_config(text)) == text);

  ExperimentConfig v;
  v.command = "verify";
  v.suite = "lemma4";
  v.dmax = 12;
  v.n = 7;
  CHECK(format_config(parse_config(format_config(v))) == format_config(v));
}

TEST_CASE("config parse errors carry the line") {
  auto line_of = [](std::string_view text) -> std::size_t {
    try {
      parse_config(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 0;
  };
  CHECK(line_of("body = ball:d=2,r=1\n# note\ntrials = many\n") == 3);
  CHECK(line_of("colour = blue\n") == 1);
  CHECK(line_of("\n\nns = 10,0\n") == 3);
  CHECK(line_of("seed\n") == 1);
}

TEST_CASE("flags override the config file and the environment is a default") {
  ExperimentConfig file = parse_config("trials = 10\nseed = 3\nbody = box:d=2\n");
  ExperimentConfig flags;
  flags.command = "deficit";
  flags.trials = 20;
  const auto merged = overlay(file, flags);
  CHECK(*merged.trials == 20);
  CHECK(*merged.seed == 3);
  CHECK(*merged.body == "box:d=2");
  CHECK(merged.command == "deficit");

  CHECK(*with_seed_environment(ExperimentConfig{}, "99").seed == 99);
  CHECK(*with_seed_environment(merged, "99").seed == 3);
  CHECK_FALSE(with_seed_environment(ExperimentConfig{}, nullptr).seed);
  CHECK_THROWS_AS(with_seed_environment(ExperimentConfig{}, "12x"), ParseError);
}

TEST_CASE("fingerprint ignores workers and output path") {
  ExperimentConfig a;
  a.command = "deficit";
  a.seed = 5;
  ExperimentConfig b = a;
  b.workers = 16;
  b.out = "elsewhere.csv";
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  b.seed = 6;
  CHECK(config_fingerprint(a) != config_fingerprint(b));
  CHECK(config_fingerprint(a).size() == 16);
}

TEST_CASE("deficit command emits the estimator schema") {
  ExperimentConfig c;
  c.command = "deficit";
  c.body = "ball:d=2,r=1";
  c.ns = {1000, 10000};
  c.trials = 100;
  c.seed = 7;
  const auto r = capture(c);
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] ==
        "body_id,d,n,trials,probes,seed,deficit_mean,deficit_stderr,scaled,scaled_stderr,predicted_limit,fingerprint");
  CHECK(rows[1].rfind("\"ball:d=2,r=1\",2,1000,100,", 0) == 0);
  CHECK(rows[2].rfind("\"ball:d=2,r=1\",2,10000,100,", 0) == 0);
  const std::string fp = config_fingerprint(with_defaults(c));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].ends_with("," + fp));
    CHECK(rows[i].find(",7,") != std::string::npos);
  }
}

TEST_CASE("constants command") {
  ExperimentConfig c;
  c.command = "constants";
  c.dmax = 10;
  const auto r = capture(c);
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0].rfind("d,c_d,W_d_1,asa_unit_ball,residual", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream in(rows[i]);
    for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    CHECK(std::stod(cells[4]) < 1e-9);
  }
}

TEST_CASE("asa, cap and convolution commands") {
  ExperimentConfig asa;
  asa.command = "asa";
  asa.body = "ellipsoid:axes=2,1";
  auto r = capture(asa);
  CHECK(r.code == 0);
  REQUIRE(lines(r.out).size() == 2);
  CHECK(lines(r.out)[1].find(",7.91631742890") != std::string::npos);

  ExperimentConfig cap;
  cap.command = "cap";
  cap.body = "ball:d=3,r=1";
  r = capture(cap);
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 21);
  cap.body = "box:d=2";
  CHECK(capture(cap).code == 2);

  ExperimentConfig conv;
  conv.command = "convolution";
  conv.n = 5;
  r = capture(conv);
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 6);
}

TEST_CASE("configuration errors exit with 2") {
  ExperimentConfig c;
  c.command = "deficit";
  c.body = "ball:d=1,r=1";
  auto r = capture(c);
  CHECK(r.code == 2);
  CHECK(r.log.find("dimension") != std::string::npos);
  c.body = "ball:d=2,r=1";
  c.ns = {1000, 100};
  CHECK(capture(c).code == 2);
  c.ns = {100};
  c.trials = 1;
  CHECK(capture(c).code == 2);
  c.trials = 0;
  CHECK(capture(c).code == 2);
  ExperimentConfig bad;
  bad.command = "frobnicate";
  CHECK(capture(bad).code == 2);
  ExperimentConfig suite;
  suite.command = "verify";
  suite.suite = "no-such-suite";
  CHECK(capture(suite).code == 2);
}

TEST_CASE("verify suites report and exit 0 on success") {
  ExperimentConfig c;
  c.command = "verify";
  c.suite = "lemma4";
  const auto r = capture(c);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# suite: lemma4", 0) == 0);
  CHECK(r.log.find("PASS lemma4") != std::string::npos);
  CHECK(r.log.find("FAIL") == std::string::npos);

  const auto dir = scratch("verify");
  std::filesystem::remove_all(dir);
  c.suite = "lemma2";
  c.out = dir.string();
  const auto w = capture(c);
  CHECK(w.code == 0);
  CHECK(std::filesystem::exists(dir / "lemma2.csv"));
  CHECK(w.out.find("NOTE lemma2") != std::string::npos);
}

TEST_CASE("every suite runs standalone") {
  for (const auto& name : suite_names()) {
    ExperimentConfig c;
    c.command = "verify";
    // Small sizes keep this fast; full sizes run in the acceptance binary.
    c.ns = {100, 1000};
    c.n = 1000;
    c.trials = 50;
    c.probes = 2000;
    const auto res = run_suite(name, c);
    CHECK(res.suite == name);
    CHECK_FALSE(res.checks.empty());
    CHECK_FALSE(res.table.rows.empty());
    for (const auto& row : res.table.rows) CHECK(row.size() == res.table.header.size());
  }
}

TEST_CASE("failing verify check exits with 1") {
  // The 15% band around the limit is out of reach at n = 5.
  ExperimentConfig c;
  c.command = "verify";
  c.suite = "theorem1-trend";
  c.ns = {4, 5};
  c.n = 10;
  c.trials = 20;
  const auto r = capture(c);
  CHECK(r.code == 1);
  CHECK(r.log.find("FAIL theorem1-trend") != std::string::npos);
}

TEST_CASE("output is byte-identical across worker counts") {
  for (const char* body : {"ball:d=4,r=1", "ellipsoid:axes=2,1"}) {
    std::string first;
    for (int workers : {1, 4, 16}) {
      ExperimentConfig c;
      c.command = "deficit";
      c.body = body;
      c.ns = {50, 100};
      c.trials = 6;
      c.probes = 3000;
      c.seed = 11;
      c.workers = workers;
      const auto r = capture(c);
      REQUIRE(r.code == 0);
      if (first.empty()) first = r.out;
      CHECK(r.out == first);
    }
  }
}

TEST_CASE("output file matches stdout") {
  ExperimentConfig c;
  c.command = "constants";
  c.dmax = 4;
  const auto to_stdout = capture(c).out;
  const auto path = scratch("constants.csv");
  c.out = path.string();
  CHECK(capture(c).code == 0);
  std::ifstream f(path);
  std::ostringstream text;
  text << f.rdbuf();
  CHECK(text.str() == to_stdout);
}
