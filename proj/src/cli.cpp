#include "stochgeo/cli.hpp"

#include "stochgeo/convolution.hpp"
#include "stochgeo/error.hpp"
#include "stochgeo/estimator.hpp"
#include "stochgeo/hull.hpp"
#include "stochgeo/numeric.hpp"
#include "stochgeo/specialfn.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

namespace stochgeo {
namespace {

constexpr const char* kDefaultBody = "ball:d=2,r=1";

std::string fmt(double v) { return format_double(v); }
std::string fmt(Index v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }

// Appends the provenance columns carried by every row.
struct Emitter {
  Table& table;
  std::string seed;
  std::string fingerprint;

  void header(std::vector<std::string> cols) {
    cols.push_back("seed");
    cols.push_back("fingerprint");
    table.header = std::move(cols);
  }
  void row(std::vector<std::string> cells) {
    cells.push_back(seed);
    cells.push_back(fingerprint);
    table.rows.push_back(std::move(cells));
  }
};

Emitter emitter(Table& table, const ExperimentConfig& config) {
  return {table, fmt(config.seed.value_or(0)), config_fingerprint(config)};
}

StreamKey root_stream(const ExperimentConfig& config) { return StreamKey{config.seed.value_or(0), {}}; }

std::string percent(double x) {
  std::ostringstream s;
  s.precision(4);
  s << 100.0 * x << "%";
  return s.str();
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

// ---- suites ---------------------------------------------------------------

SuiteResult suite_deficit_trend(const ExperimentConfig& c) {
  SuiteResult res{"theorem1-trend", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"body_id", "d", "n", "trials", "deficit_mean", "deficit_stderr", "scaled", "scaled_stderr",
             "predicted_limit"});
  const std::vector<Index> ns = c.ns.empty() ? std::vector<Index>{1000, 10000, 100000} : c.ns;
  const Index trials = c.trials.value_or(1000);
  const Index n_affine = c.n.value_or(10000);
  const StreamKey root = root_stream(c);
  TableOptions opts;
  opts.common_random_numbers = true;
  opts.workers = c.workers.value_or(1);

  auto add = [&](const std::string& id, const ConvexBody& body, const ConvergenceRow& row) {
    const auto& e = row.estimate;
    em.row({id, fmt(body.dim()), fmt(e.n), fmt(e.trials), fmt(e.deficit_mean), fmt(e.deficit_stderr),
            fmt(e.scaled), fmt(e.scaled_stderr), fmt(row.predicted_limit)});
  };

  const auto disk = ConvexBody::unit_ball(2);
  const auto disk_rows = convergence_table(disk, ns, trials, 0, substream(root, 0), opts);
  for (const auto& r : disk_rows) add("ball:d=2,r=1", disk, r);
  const double limit = predicted_limit(disk);
  bool decreasing = true;
  for (std::size_t i = 1; i < disk_rows.size(); ++i)
    decreasing &= std::abs(disk_rows[i].estimate.scaled - limit) < std::abs(disk_rows[i - 1].estimate.scaled - limit);
  res.checks.push_back({"disk: |scaled - limit| strictly decreasing in n", decreasing, "limit " + fmt(limit)});
  const double rel = std::abs(disk_rows.back().estimate.scaled - limit) / limit;
  res.checks.push_back({"disk: scaled within 15% of the limit at n = " + fmt(ns.back()), rel < 0.15,
                        "scaled " + fmt(disk_rows.back().estimate.scaled) + ", off by " + percent(rel)});

  const auto square = ConvexBody::unit_box(2);
  const auto sq_rows = convergence_table(square, ns, trials, 0, substream(root, 1), opts);
  for (const auto& r : sq_rows) add("box:d=2", square, r);
  bool sq_decreasing = true;
  for (std::size_t i = 1; i < sq_rows.size(); ++i)
    sq_decreasing &= sq_rows[i].estimate.scaled < sq_rows[i - 1].estimate.scaled;
  res.checks.push_back({"square: scaled strictly decreasing in n", sq_decreasing, ""});
  const double drop = sq_rows.back().estimate.scaled / sq_rows.front().estimate.scaled;
  res.checks.push_back({"square: scaled at largest n below 50% of smallest n", drop < 0.5, "ratio " + fmt(drop)});

  // Unit-area ellipse (axes ratio 2:1) against the unit-area disk.
  const double s = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  Vector axes(2);
  axes << 2.0 * s, s;
  const auto ellipse = ConvexBody::ellipsoid_axes(axes);
  const auto unit_disk = ConvexBody::ball(Vector::Zero(2), 1.0 / std::sqrt(std::numbers::pi));
  const auto e_row = convergence_table(ellipse, {n_affine}, trials, 0, substream(root, 2), opts).front();
  const auto d_row = convergence_table(unit_disk, {n_affine}, trials, 0, substream(root, 3), opts).front();
  add("ellipsoid:axes=" + fmt(axes(0)) + "," + fmt(axes(1)), ellipse, e_row);
  add("ball:d=2,r=" + fmt(1.0 / std::sqrt(std::numbers::pi)), unit_disk, d_row);
  const double gap = std::abs(e_row.estimate.scaled - d_row.estimate.scaled);
  const double joint = std::hypot(e_row.estimate.scaled_stderr, d_row.estimate.scaled_stderr);
  res.checks.push_back({"unit-area ellipse vs disk at n = " + fmt(n_affine) + " within joint 3 sigma",
                        gap < 3.0 * joint, "gap " + fmt(gap) + ", sigma " + fmt(joint)});
  return res;
}

SuiteResult suite_boundary_flux(const ExperimentConfig& c) {
  SuiteResult res{"lemma2", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"t", "rho", "g", "lhs", "rhs", "ratio"});
  const double big_t = std::numbers::pi;
  std::vector<double> ts;
  for (int k = 0; k < 20; ++k) ts.push_back(big_t * (0.05 + 0.9 * k / 19.0));
  const auto rows = flux_check_disk(1.0, ts);
  std::vector<double> ratios;
  bool negative = true;
  for (const auto& r : rows) {
    em.row({fmt(r.t), fmt(r.rho), fmt(r.g), fmt(r.lhs), fmt(r.rhs), fmt(r.ratio)});
    ratios.push_back(r.ratio);
    negative &= r.lhs < 0.0 && r.rhs < 0.0;
  }
  const auto me = mean_and_stderr(ratios);
  const double sd = me.std_error * std::sqrt(double(ratios.size()));
  res.checks.push_back({"ratio rhs/lhs constant across 20 t values (sd < 1e-6)", sd < 1e-6, "sd " + sci(sd)});
  res.checks.push_back({"both sides negative on the grid", negative, ""});
  res.notes.push_back("ratio rhs/lhs = " + fmt(me.mean) + " (reported, not asserted)");
  return res;
}

SuiteResult suite_cap_sandwich(const ExperimentConfig& c) {
  SuiteResult res{"lemma4", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"d", "r", "height", "lower", "exact", "upper", "quadrature"});
  int cells = 0, violations = 0;
  double worst_quad = 0.0;
  for (int d = 2; d <= 8; ++d)
    for (double r : {0.5, 1.0, 2.0})
      for (int k = 1; k <= 20; ++k) {
        const CapGeometry cap{d, r, 0.05 * k * r};
        const double exact = cap_volume_exact(cap);
        const double quad = cap_volume_quadrature(cap);
        const auto b = cap_volume_bounds(cap);
        ++cells;
        violations += !(b.lower <= exact && exact <= b.upper);
        worst_quad = std::max(worst_quad, std::abs(quad - exact) / exact);
        em.row({fmt(d), fmt(r), fmt(cap.height), fmt(b.lower), fmt(exact), fmt(b.upper), fmt(quad)});
      }
  res.checks.push_back({"lower <= cap volume <= upper on the grid", violations == 0,
                        fmt(violations) + " violations in " + fmt(cells) + " cells"});
  res.checks.push_back({"closed form matches quadrature to 1e-10", worst_quad < 1e-10, "max rel " + sci(worst_quad)});
  return res;
}

SuiteResult suite_uncovered_bound(const ExperimentConfig& c) {
  SuiteResult res{"lemma7", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"n", "s", "t", "bound", "mc_estimate", "mc_stderr"});
  const auto disk = ConvexBody::unit_ball(2);
  const double vol = volume(disk);
  const Index trials = c.trials.value_or(10000);
  const int workers = c.workers.value_or(1);
  Vector origin = Vector::Zero(2), dir(2);
  dir << 1.0, 0.0;
  const auto boundary = ray_boundary(disk, origin, dir);
  std::uint64_t cell = 0;
  for (Index n : {Index(50), Index(200), Index(1000)})
    for (double s : {0.01, 0.05, 0.2}) {
      const double t = 2.0 * vol * s;
      const double bound = uncovered_probability_bound(2, n, t, vol);
      const Vector xt = convolution_point(disk, boundary, t);
      const auto p = uncovered_probability(disk, xt, n, trials, substream(root_stream(c), cell++), workers);
      em.row({fmt(n), fmt(s), fmt(t), fmt(bound), fmt(p.p), fmt(p.std_error)});
      res.checks.push_back({"n = " + fmt(n) + ", s = " + fmt(s) + ": bound >= MC - 3 stderr",
                            bound >= p.p - 3.0 * p.std_error,
                            "bound " + sci(bound) + ", MC " + sci(p.p) + " +- " + sci(p.std_error)});
    }
  return res;
}

SuiteResult suite_projection_ratio(const ExperimentConfig& c) {
  SuiteResult res{"lemma18", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"d", "t", "ratio", "limit", "relerr"});
  for (int d : {2, 3}) {
    const double big_t = unit_ball_volume(d);
    const double limit = projection_ratio_limit_ball(d, 1.0);
    double final_err = 0.0;
    for (int k = 2; k <= 8; ++k) {
      const double t = std::pow(10.0, -k) * big_t;
      const double ratio = projection_ratio_ball(d, 1.0, t);
      const double rel = std::abs(ratio - limit) / limit;
      em.row({fmt(d), fmt(t), fmt(ratio), fmt(limit), fmt(rel)});
      final_err = rel;
    }
    res.checks.push_back({"d = " + fmt(d) + ": relative error < 1e-3 at t = 1e-8 T", final_err < 1e-3,
                          "relerr " + sci(final_err)});
  }
  return res;
}

SuiteResult suite_consistency(const ExperimentConfig& c) {
  SuiteResult res{"consistency", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"d", "r", "c_d", "ball_limit", "affine_surface_area", "residual"});
  double worst = 0.0;
  for (int d = 2; d <= c.dmax.value_or(10); ++d)
    for (double r : {0.5, 1.0, 2.0}) {
      const double residual = limit_constant_residual(d, r);
      worst = std::max(worst, residual);
      const auto ball = ConvexBody::ball(Vector::Zero(d), r);
      em.row({fmt(d), fmt(r), fmt(deficit_constant(d)), fmt(ball_deficit_limit(d, r)),
              fmt(affine_surface_area(ball)), fmt(residual)});
    }
  res.checks.push_back({"c(d) W(d,r) / vol^(2/(d+1)) reproduces as(B_r) to 1e-9", worst < 1e-9, "max " + sci(worst)});
  return res;
}

bool polygon_contains(const Matrix& pts, const std::vector<Index>& hull, const Vector& z) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vector a = pts.col(hull[i]);
    const Vector b = pts.col(hull[(i + 1) % hull.size()]);
    const double cross = (b(0) - a(0)) * (z(1) - a(1)) - (b(1) - a(1)) * (z(0) - a(0));
    if (cross < 0.0) return false;
  }
  return true;
}

SuiteResult suite_oracle_hull(const ExperimentConfig& c) {
  SuiteResult res{"oracle-hull", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"check", "instance", "expected", "observed", "std_error", "agree"});
  RandomStream rng(substream(root_stream(c), 0));
  Index queries = 0, mismatches = 0;
  for (int inst = 0; inst < 500; ++inst) {
    const Index n = 3 + static_cast<Index>(rng.uniform() * 48.0);
    Matrix pts(2, n);
    for (Index j = 0; j < n; ++j) pts(0, j) = 2.0 * rng.uniform() - 1.0, pts(1, j) = 2.0 * rng.uniform() - 1.0;
    const auto hull = hull_vertices_2d(pts);
    const HullSample sample{pts};
    const HullMembership oracle(sample);
    Index inside_poly = 0, inside_lp = 0, bad = 0;
    for (int q = 0; q < 100; ++q) {
      Vector z(2);
      z << 2.4 * rng.uniform() - 1.2, 2.4 * rng.uniform() - 1.2;
      const bool a = polygon_contains(pts, hull, z);
      const bool b = oracle.classify(z) == Membership::Inside;
      inside_poly += a;
      inside_lp += b;
      bad += a != b;
    }
    queries += 100;
    mismatches += bad;
    em.row({"in_hull", fmt(inst), fmt(inside_poly), fmt(inside_lp), "0", bad == 0 ? "1" : "0"});
  }
  res.checks.push_back({"in_hull agrees with polygon membership on 500 planar instances", mismatches == 0,
                        fmt(mismatches) + " mismatches in " + fmt(queries) + " queries"});

  const Index probes = c.probes.value_or(20000);
  int agree = 0;
  RandomStream geo(substream(root_stream(c), 1));
  for (int inst = 0; inst < 50; ++inst) {
    const int d = 2 + inst % 3;
    const double r = 0.5 + 2.0 * geo.uniform();
    Vector centre(d), u(d);
    for (int i = 0; i < d; ++i) centre(i) = geo.normal(), u(i) = geo.normal();
    const auto ball = ConvexBody::ball(centre, r);
    const Vector x = centre + 0.95 * r * geo.uniform() * u.normalized();
    const double exact = covariogram(ball, x).value;
    const auto mc = covariogram_mc(ball, x, probes, substream(root_stream(c), 100 + inst));
    const bool ok = std::abs(mc.value - exact) <= 5.0 * mc.std_error;
    agree += ok;
    em.row({"covariogram", fmt(inst), fmt(exact), fmt(mc.value), fmt(mc.std_error), ok ? "1" : "0"});
  }
  res.checks.push_back({"covariogram Monte Carlo within 5 stderr of the exact lens on 50 balls", agree == 50,
                        fmt(agree) + "/50"});
  return res;
}

SuiteResult suite_sampler_uniformity(const ExperimentConfig& c) {
  SuiteResult res{"sampler-uniformity", {}, {}, {}};
  auto em = emitter(res.table, c);
  em.header({"d", "cells", "count", "chi2", "critical"});
  const Index count = 1000000;
  for (int d : {2, 3}) {
    const Matrix pts = sample_uniform(ConvexBody::unit_box(d), substream(root_stream(c), d), count);
    const int cells = 1 << (2 * d);
    std::vector<double> hist(static_cast<std::size_t>(cells), 0.0);
    for (Index j = 0; j < count; ++j) {
      int cell = 0;
      for (int i = 0; i < d; ++i) cell = 4 * cell + std::min(3, static_cast<int>(pts(i, j) * 4.0));
      hist[static_cast<std::size_t>(cell)] += 1.0;
    }
    const double expected = double(count) / cells;
    double chi2 = 0.0;
    for (double h : hist) chi2 += (h - expected) * (h - expected) / expected;
    const boost::math::chi_squared dist(cells - 1);
    const double critical = boost::math::quantile(boost::math::complement(dist, 0.001));
    em.row({fmt(d), fmt(cells), fmt(count), fmt(chi2), fmt(critical)});
    res.checks.push_back({"box d = " + fmt(d) + ": chi-square on a 4^d grid passes at level 0.001",
                          chi2 < critical, "chi2 " + fmt(chi2) + " < " + fmt(critical)});
  }
  Matrix shape(3, 3);
  shape << 2.0, 0.3, 0.1, 0.3, 1.0, -0.2, 0.1, -0.2, 0.5;
  std::vector<Halfspace> hex;
  for (int k = 0; k < 6; ++k) {
    Vector a(2);
    a << std::cos(k * std::numbers::pi / 3.0), std::sin(k * std::numbers::pi / 3.0);
    hex.push_back({a, 1.0});
  }
  const std::vector<ConvexBody> bodies = {ConvexBody::unit_ball(3), ConvexBody::ellipsoid(Vector::Zero(3), shape),
                                          ConvexBody::unit_box(4), ConvexBody::standard_simplex(3),
                                          ConvexBody::hpolytope(hex, Vector::Zero(2))};
  std::uint64_t idx = 10;
  for (const auto& body : bodies) {
    const Matrix pts = sample_uniform(body, substream(root_stream(c), idx++), 10000);
    Index outside = 0;
    for (Index j = 0; j < pts.cols(); ++j) outside += !contains(body, pts.col(j));
    res.checks.push_back({std::string(body.kind_name()) + ": all samples inside the body", outside == 0,
                          fmt(outside) + " outside of 10000"});
  }
  return res;
}

using SuiteFn = std::function<SuiteResult(const ExperimentConfig&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"theorem1-trend", suite_deficit_trend}, {"lemma2", suite_boundary_flux},
      {"lemma4", suite_cap_sandwich},                 {"lemma7", suite_uncovered_bound},
      {"lemma18", suite_projection_ratio},               {"consistency", suite_consistency},
      {"oracle-hull", suite_oracle_hull},       {"sampler-uniformity", suite_sampler_uniformity}};
  return table;
}

// ---- commands -------------------------------------------------------------

std::string body_spec(const ExperimentConfig& c) { return c.body.value_or(kDefaultBody); }

Table command_deficit(const ExperimentConfig& c, const ConvexBody& body) {
  Table t;
  auto em = emitter(t, c);
  // The estimator schema already leads with the seed; keep its order.
  t.header = {"body_id", "d", "n", "trials", "probes", "seed", "deficit_mean", "deficit_stderr",
              "scaled", "scaled_stderr", "predicted_limit", "fingerprint"};
  TableOptions opts;
  opts.workers = c.workers.value_or(1);
  const double limit = body.is_polytopal() ? 0.0 : predicted_limit(body);
  for (const auto& row : convergence_table(body, c.ns, *c.trials, *c.probes, root_stream(c), opts)) {
    const auto& e = row.estimate;
    t.rows.push_back({body_spec(c), fmt(body.dim()), fmt(e.n), fmt(e.trials), fmt(e.probes), em.seed,
                      fmt(e.deficit_mean), fmt(e.deficit_stderr), fmt(e.scaled), fmt(e.scaled_stderr), fmt(limit),
                      em.fingerprint});
  }
  return t;
}

Table command_constants(const ExperimentConfig& c) {
  Table t;
  auto em = emitter(t, c);
  em.header({"d", "c_d", "W_d_1", "asa_unit_ball", "residual"});
  for (int d = 2; d <= *c.dmax; ++d)
    em.row({fmt(d), fmt(deficit_constant(d)), fmt(ball_deficit_limit(d, 1.0)),
            fmt(affine_surface_area(ConvexBody::unit_ball(d))), fmt(limit_constant_residual(d, 1.0))});
  return t;
}

Table command_asa(const ExperimentConfig& c, const ConvexBody& body) {
  Table t;
  auto em = emitter(t, c);
  em.header({"body_id", "d", "volume", "affine_surface_area", "predicted_limit"});
  em.row({body_spec(c), fmt(body.dim()), fmt(volume(body)), fmt(affine_surface_area(body)),
          fmt(predicted_limit(body))});
  return t;
}

Table command_cap(const ExperimentConfig& c, const ConvexBody& body) {
  const auto* ball = body.as<Ball>();
  if (!ball) throw ParseError("cap: body must be a ball", 0);
  Table t;
  auto em = emitter(t, c);
  em.header({"d", "r", "height", "exact", "quadrature", "lower", "upper"});
  for (int k = 1; k <= 20; ++k) {
    const CapGeometry cap{body.dim(), ball->radius, 0.05 * k * ball->radius};
    const auto b = cap_volume_bounds(cap);
    em.row({fmt(cap.d), fmt(cap.r), fmt(cap.height), fmt(cap_volume_exact(cap)), fmt(cap_volume_quadrature(cap)),
            fmt(b.lower), fmt(b.upper)});
  }
  return t;
}

Table command_convolution(const ExperimentConfig& c, const ConvexBody& body) {
  Table t;
  auto em = emitter(t, c);
  em.header({"body_id", "d", "rho", "g", "g_stderr", "max_value"});
  CovariogramOptions opts;
  opts.probes = *c.probes;
  opts.stream = root_stream(c);
  const auto profile = covariogram_profile(body, Vector::Unit(body.dim(), 0), static_cast<int>(*c.n), opts);
  for (const auto& s : profile.samples)
    em.row({body_spec(c), fmt(body.dim()), fmt(s.rho), fmt(s.g), fmt(s.g_std_error), fmt(profile.max_value)});
  return t;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("cannot write " + path);
}

std::vector<std::string> selected_suites(const ExperimentConfig& c) {
  const std::string s = c.suite.value_or("all");
  if (s == "all") return suite_names();
  if (!suites().contains(s)) throw ParseError("unknown suite '" + s + "'", 0);
  return {s};
}

int run_verify(const ExperimentConfig& c, std::ostream& out, std::ostream& log) {
  const auto names = selected_suites(c);
  if (c.out) std::filesystem::create_directories(*c.out);
  // With CSV on stdout the report goes to the log stream.
  std::ostream& report = c.out ? out : log;
  bool all_passed = true;
  for (const auto& name : names) {
    const auto res = run_suite(name, c);
    const std::string csv = to_csv(res.table);
    if (c.out) {
      write_text((std::filesystem::path(*c.out) / (name + ".csv")).string(), csv);
    } else {
      out << "# suite: " << name << '\n' << csv;
    }
    for (const auto& chk : res.checks) {
      report << (chk.passed ? "PASS " : "FAIL ") << name << ": " << chk.name;
      if (!chk.detail.empty()) report << " (" << chk.detail << ")";
      report << '\n';
    }
    for (const auto& note : res.notes) report << "NOTE " << name << ": " << note << '\n';
    all_passed &= res.passed();
  }
  return all_passed ? 0 : 1;
}

}  // namespace

std::string to_csv(const Table& table) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + '"';
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += field(cells[i]);
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"theorem1-trend", "lemma2",      "lemma4",
                                                 "lemma7",         "lemma18",     "consistency",
                                                 "oracle-hull",    "sampler-uniformity"};
  return names;
}

ExperimentConfig with_seed_environment(ExperimentConfig config, const char* env_seed) {
  if (config.seed || !env_seed) return config;
  std::string_view text(env_seed);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError("STOCHGEO_SEED is not an unsigned integer: '" + std::string(text) + "'", 0);
  config.seed = v;
  return config;
}

ExperimentConfig with_defaults(ExperimentConfig c) {
  if (!c.seed) c.seed = 1;
  const std::string& cmd = c.command;
  if (cmd == "deficit") {
    if (!c.body) c.body = kDefaultBody;
    if (c.ns.empty()) c.ns = {c.n.value_or(1000)};
    c.n.reset();
    if (!c.trials) c.trials = 100;
    if (!c.probes) c.probes = 100000;
  } else if (cmd == "constants") {
    if (!c.dmax) c.dmax = 10;
  } else if (cmd == "asa" || cmd == "cap") {
    if (!c.body) c.body = kDefaultBody;
  } else if (cmd == "convolution") {
    if (!c.body) c.body = kDefaultBody;
    if (!c.n) c.n = 21;
    if (!c.probes) c.probes = 200000;
  } else if (cmd == "verify") {
    if (!c.suite) c.suite = "all";
  }
  return c;
}

SuiteResult run_suite(const std::string& name, const ExperimentConfig& config) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw ParseError("unknown suite '" + name + "'", 0);
  ExperimentConfig c = config;
  if (!c.seed) c.seed = 1;
  return it->second(c);
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
  static const std::vector<std::string> commands = {"deficit", "constants", "asa", "cap", "convolution", "verify"};
  try {
    validate(config);
    const ExperimentConfig c = with_defaults(config);
    if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
      throw ParseError("unknown command '" + c.command + "'", 0);
    if (c.command == "verify") return run_verify(c, out, log);
    if (c.command == "deficit") {
      for (std::size_t i = 1; i < c.ns.size(); ++i)
        if (c.ns[i] <= c.ns[i - 1]) throw ParseError("ns must be strictly increasing", i);
      if (*c.trials < 2) throw ParseError("trials must be >= 2", 0);
    }

    Table table;
    if (c.command == "constants") {
      if (*c.dmax < 2) throw ParseError("dmax must be >= 2", 0);
      table = command_constants(c);
    } else {
      const ConvexBody body = parse_body_spec(*c.body);
      if (c.command == "deficit") table = command_deficit(c, body);
      else if (c.command == "asa") table = command_asa(c, body);
      else if (c.command == "cap") table = command_cap(c, body);
      else table = command_convolution(c, body);
    }
    const std::string csv = to_csv(table);
    if (c.out) write_text(*c.out, csv);
    else out << csv;
    return 0;
  } catch (const ParseError& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace stochgeo
