#include "stochgeo/config.hpp"

#include "stochgeo/error.hpp"
#include "stochgeo/numeric.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace stochgeo {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

template <class T>
T number_or_throw(std::string_view text, const std::string& what, std::size_t position) {
  auto v = parse_number<T>(text);
  if (!v) throw ParseError("bad " + what + ": '" + std::string(text) + "'", position);
  return *v;
}

std::string join(const std::vector<Index>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

void emit(std::ostringstream& out, const char* key, const std::string& value) {
  out << key << " = " << value << '\n';
}

}  // namespace

std::vector<Index> parse_index_list(std::string_view text) {
  std::vector<Index> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    const auto v = parse_number<long long>(item);
    if (!v || *v < 1) throw ParseError("expected a positive integer: '" + std::string(item) + "'", pos);
    out.push_back(static_cast<Index>(*v));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream out;
  if (!c.command.empty()) emit(out, "command", c.command);
  if (c.body) emit(out, "body", *c.body);
  if (!c.ns.empty()) emit(out, "ns", join(c.ns));
  if (c.n) emit(out, "n", std::to_string(*c.n));
  if (c.trials) emit(out, "trials", std::to_string(*c.trials));
  if (c.probes) emit(out, "probes", std::to_string(*c.probes));
  if (c.seed) emit(out, "seed", std::to_string(*c.seed));
  if (c.workers) emit(out, "workers", std::to_string(*c.workers));
  if (c.suite) emit(out, "suite", *c.suite);
  if (c.out) emit(out, "out", *c.out);
  if (c.dmax) emit(out, "dmax", std::to_string(*c.dmax));
  return out.str();
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key = value", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      if (key == "command") c.command = std::string(value);
      else if (key == "body") c.body = std::string(value);
      else if (key == "ns") c.ns = parse_index_list(value);
      else if (key == "n") c.n = number_or_throw<Index>(value, "n", line_no);
      else if (key == "trials") c.trials = number_or_throw<Index>(value, "trials", line_no);
      else if (key == "probes") c.probes = number_or_throw<Index>(value, "probes", line_no);
      else if (key == "seed") c.seed = number_or_throw<std::uint64_t>(value, "seed", line_no);
      else if (key == "workers") c.workers = number_or_throw<int>(value, "workers", line_no);
      else if (key == "suite") c.suite = std::string(value);
      else if (key == "out") c.out = std::string(value);
      else if (key == "dmax") c.dmax = number_or_throw<int>(value, "dmax", line_no);
      else throw ParseError("unknown key '" + key + "'", line_no);
    } catch (const ParseError& e) {
      throw ParseError(where + e.what(), line_no);
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ExperimentConfig overlay(ExperimentConfig base, const ExperimentConfig& top) {
  if (!top.command.empty()) base.command = top.command;
  if (top.body) base.body = top.body;
  if (!top.ns.empty()) base.ns = top.ns;
  if (top.n) base.n = top.n;
  if (top.trials) base.trials = top.trials;
  if (top.probes) base.probes = top.probes;
  if (top.seed) base.seed = top.seed;
  if (top.workers) base.workers = top.workers;
  if (top.suite) base.suite = top.suite;
  if (top.out) base.out = top.out;
  if (top.dmax) base.dmax = top.dmax;
  return base;
}

void validate(const ExperimentConfig& c) {
  auto positive = [](auto v, const char* name) {
    if (v && *v < 1) throw ParseError(std::string(name) + " must be positive", 0);
  };
  positive(c.n, "n");
  positive(c.trials, "trials");
  positive(c.probes, "probes");
  positive(c.workers, "workers");
  positive(c.dmax, "dmax");
  for (Index v : c.ns)
    if (v < 1) throw ParseError("ns entries must be positive", 0);
}

std::string canonical_text(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.workers.reset();
  c.out.reset();
  return format_config(c);
}

std::string config_fingerprint(const ExperimentConfig& config) {
  return fingerprint_hex(canonical_text(config));
}

ConvexBody parse_body_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("body spec: expected '<kind>:'", spec.size());
  const std::string kind(spec.substr(0, colon));
  std::size_t pos = colon + 1;

  // Reads "key=" at pos and returns the value up to the next comma (or the
  // rest of the string when `rest` is set).
  auto field = [&](std::string_view key, bool rest) {
    if (spec.substr(pos, key.size() + 1) != std::string(key) + "=")
      throw ParseError("body spec: expected '" + std::string(key) + "='", pos);
    pos += key.size() + 1;
    const auto end = rest ? spec.size() : std::min(spec.find(',', pos), spec.size());
    const auto value = spec.substr(pos, end - pos);
    const auto start = pos;
    pos = end;
    return std::pair{value, start};
  };
  auto comma = [&] {
    if (pos >= spec.size() || spec[pos] != ',') throw ParseError("body spec: expected ','", pos);
    ++pos;
  };
  auto done = [&] {
    if (pos != spec.size()) throw ParseError("body spec: unexpected trailing text", pos);
  };
  auto dim = [&] {
    const auto [text, at] = field("d", false);
    const auto d = parse_number<int>(text);
    if (!d) throw ParseError("body spec: bad dimension", at);
    if (*d < 2) throw ParseError("body spec: dimension must be >= 2", at);
    return *d;
  };
  auto real = [](std::string_view text, std::size_t at) {
    const auto v = parse_number<double>(text);
    if (!v) throw ParseError("body spec: bad number '" + std::string(text) + "'", at);
    if (!(*v > 0.0)) throw ParseError("body spec: value must be positive", at);
    return *v;
  };

  if (kind == "ball") {
    const int d = dim();
    comma();
    const auto [text, at] = field("r", false);
    const double r = real(text, at);
    done();
    return ConvexBody::ball(Vector::Zero(d), r);
  }
  if (kind == "ellipsoid") {
    const auto [text, at] = field("axes", true);
    std::vector<double> axes;
    std::size_t p = 0;
    while (true) {
      const auto c = text.find(',', p);
      const auto item = text.substr(p, c == std::string_view::npos ? text.npos : c - p);
      axes.push_back(real(item, at + p));
      if (c == std::string_view::npos) break;
      p = c + 1;
    }
    if (axes.size() < 2) throw ParseError("body spec: dimension must be >= 2", at);
    return ConvexBody::ellipsoid_axes(Eigen::Map<const Vector>(axes.data(), static_cast<Index>(axes.size())));
  }
  if (kind == "box") {
    const int d = dim();
    done();
    return ConvexBody::unit_box(d);
  }
  if (kind == "simplex") {
    const int d = dim();
    done();
    return ConvexBody::standard_simplex(d);
  }
  if (kind == "hpoly") {
    const auto [path, at] = field("file", true);
    if (path.empty()) throw ParseError("body spec: empty file path", at);
    return load_hpolytope(std::string(path));
  }
  throw ParseError("body spec: unknown kind '" + kind + "'", 0);
}

}  // namespace stochgeo
