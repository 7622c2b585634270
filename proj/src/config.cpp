#include "rwre/config.hpp"

#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rwre {

namespace {

[[noreturn]] void fail(const std::string& filename, int line, const std::string& msg) {
  throw std::invalid_argument(filename + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::int64_t parse_i64(const std::string& s, const std::string& filename, int line) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(filename, line, "bad integer '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& filename, int line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    fail(filename, line, "bad unsigned integer '" + s + "'");
  }
  return v;
}

double parse_f64(const std::string& s, const std::string& filename, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(filename, line, "bad number '" + s + "'");
  }
}

Site parse_site(const std::string& s, const std::string& filename, int line) {
  std::string body = s;
  if (!body.empty() && body.front() == '(' && body.back() == ')') {
    body = body.substr(1, body.size() - 2);
  }
  Site out;
  for (const std::string& tok : split(body, ',')) out.push_back(parse_i64(tok, filename, line));
  return out;
}

// Token form: "(c1,c2,...):p/q"
std::vector<Jump> parse_jumps(const std::string& s, const std::string& filename, int line) {
  std::vector<Jump> jumps;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    auto colon = tok.rfind(':');
    if (colon == std::string::npos) fail(filename, line, "bad jump token '" + tok + "'");
    try {
      jumps.push_back(Jump{parse_site(tok.substr(0, colon), filename, line),
                           Rational::parse(tok.substr(colon + 1))});
    } catch (const std::invalid_argument& e) {
      fail(filename, line, std::string(e.what()));
    }
  }
  if (jumps.empty()) fail(filename, line, "empty jump list");
  return jumps;
}

const std::set<std::string>& known_experiments() {
  static const std::set<std::string> k{"drift",          "transience", "loop-reversal",
                                       "two-walk",       "cylinder-audit", "ineq-804",
                                       "c3-check"};
  return k;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& filename) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string s = raw;
    auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(filename, line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(filename, line, "empty key");
    if (value.empty()) fail(filename, line, "empty value for '" + key + "'");
    if (!seen.insert(key).second) fail(filename, line, "duplicate key '" + key + "'");

    if (key == "experiment") {
      if (!known_experiments().count(value)) fail(filename, line, "unknown experiment '" + value + "'");
      cfg.experiment = value;
    } else if (key == "dim") {
      std::int64_t d = parse_i64(value, filename, line);
      if (d < 1 || d > 8) fail(filename, line, "dim must be in [1, 8]");
      cfg.dim = static_cast<int>(d);
    } else if (key == "jumps") {
      cfg.jumps = parse_jumps(value, filename, line);
    } else if (key == "direction") {
      for (const std::string& tok : split(value, ',')) {
        cfg.direction.push_back(parse_f64(tok, filename, line));
      }
    } else if (key == "u") {
      cfg.u = parse_site(value, filename, line);
    } else if (key == "u2") {
      cfg.u2 = parse_site(value, filename, line);
    } else if (key == "N") {
      cfg.n_around = parse_i64(value, filename, line);
      if (cfg.n_around < 1 || cfg.n_around > 1000000) fail(filename, line, "N out of range");
    } else if (key == "L") {
      cfg.depth = parse_f64(value, filename, line);
      if (!(cfg.depth > 0.0) || cfg.depth > 1e6) fail(filename, line, "L out of range");
    } else if (key == "b") {
      cfg.threshold_b = parse_f64(value, filename, line);
      if (!(cfg.threshold_b > 0.0) || cfg.threshold_b > 1e9) fail(filename, line, "b out of range");
    } else if (key == "two_walk_L") {
      cfg.threshold_l = parse_f64(value, filename, line);
      if (!(cfg.threshold_l > 0.0) || cfg.threshold_l > 1e6) {
        fail(filename, line, "two_walk_L out of range");
      }
    } else if (key == "horizon") {
      cfg.horizon = parse_u64(value, filename, line);
      if (cfg.horizon < 1 || cfg.horizon > 1000000000ull) fail(filename, line, "horizon out of range");
    } else if (key == "trials") {
      cfg.trials = parse_u64(value, filename, line);
      if (cfg.trials < 1 || cfg.trials > 1000000000ull) fail(filename, line, "trials out of range");
    } else if (key == "pilot_trials") {
      cfg.pilot_trials = parse_u64(value, filename, line);
      if (cfg.pilot_trials < 1 || cfg.pilot_trials > 100000000ull) {
        fail(filename, line, "pilot_trials out of range");
      }
    } else if (key == "box_radius") {
      std::int64_t r = parse_i64(value, filename, line);
      if (r < 1 || r > 64) fail(filename, line, "box_radius out of range");
      cfg.box_radius = static_cast<int>(r);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, filename, line);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else {
      fail(filename, line, "unknown key '" + key + "'");
    }
  }
  if (cfg.experiment.empty()) {
    throw std::invalid_argument(filename + ": missing required key 'experiment'");
  }
  if (cfg.jumps.empty()) {
    throw std::invalid_argument(filename + ": missing required key 'jumps'");
  }
  return cfg;
}

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

std::string canonical_config(const ExperimentConfig& cfg, std::uint64_t effective_seed) {
  std::ostringstream os;
  os << "experiment=" << cfg.experiment << ";dim=" << cfg.dim << ";jumps=";
  for (const Jump& j : cfg.jumps) {
    os << "(";
    for (std::size_t i = 0; i < j.y.size(); ++i) os << (i ? "," : "") << j.y[i];
    os << "):" << j.alpha.str() << " ";
  }
  os << ";direction=";
  for (std::size_t i = 0; i < cfg.direction.size(); ++i) {
    os << (i ? "," : "") << fmt_double(cfg.direction[i]);
  }
  os << ";u=";
  for (std::size_t i = 0; i < cfg.u.size(); ++i) os << (i ? "," : "") << cfg.u[i];
  os << ";u2=";
  if (cfg.u2) {
    for (std::size_t i = 0; i < cfg.u2->size(); ++i) os << (i ? "," : "") << (*cfg.u2)[i];
  }
  os << ";N=" << cfg.n_around << ";L=" << fmt_double(cfg.depth)
     << ";b=" << fmt_double(cfg.threshold_b) << ";two_walk_L=" << fmt_double(cfg.threshold_l)
     << ";horizon=" << cfg.horizon << ";trials=" << cfg.trials
     << ";pilot_trials=" << cfg.pilot_trials << ";box_radius=" << cfg.box_radius
     << ";seed=" << effective_seed;
  return os.str();
}

std::uint64_t config_digest(const ExperimentConfig& cfg, std::uint64_t effective_seed) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : canonical_config(cfg, effective_seed)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace rwre
