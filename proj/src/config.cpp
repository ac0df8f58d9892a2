#include "wft/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "wft/common.hpp"

namespace wft {

std::vector<VariationExponent> RunConfig::effective_s_list() const {
  if (!s_list.empty()) return s_list;
  return {VariationExponent::from_p(3.0), VariationExponent::from_p(2.0),
          VariationExponent::from_p(1.0)};
}

std::vector<double> RunConfig::effective_snapshot_times() const {
  if (!snapshot_times.empty()) return snapshot_times;
  return {0.5 * t_max, t_max};
}

VariationExponent parse_exponent(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    if (!(num > 0.0) || !(den > 0.0)) {
      throw ContractViolation("exponent fraction must be positive");
    }
    return VariationExponent::from_p(den / num);
  }
  return VariationExponent::from_s(std::stod(text));
}

std::string exponent_to_string(const VariationExponent& e) {
  if (e.p == 1.0) return "1";
  if (e.p == 2.0) return "1/2";
  if (e.p == 3.0) return "1/3";
  std::ostringstream os;
  os << e.s;
  return os.str();
}

namespace {

struct Parser {
  RunConfig cfg;
  std::vector<ParseIssue> issues;

  void fail(int line, const std::string& field, const std::string& msg) {
    issues.push_back({line, field, msg});
  }

  bool number(int line, const std::string& field, const std::string& v,
              double* out) {
    try {
      std::size_t used = 0;
      *out = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument("trailing characters");
      if (!std::isfinite(*out)) throw std::invalid_argument("not finite");
      return true;
    } catch (const std::exception& e) {
      fail(line, field, std::string("malformed number '") + v + "': " + e.what());
      return false;
    }
  }

  bool integer(int line, const std::string& field, const std::string& v,
               std::int64_t* out) {
    const char* first = v.data();
    const char* last = v.data() + v.size();
    auto rc = std::from_chars(first, last, *out);
    if (rc.ec != std::errc{} || rc.ptr != last) {
      fail(line, field, "malformed integer '" + v + "'");
      return false;
    }
    return true;
  }

  std::vector<std::string> split(const std::string& v) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : v) {
      if (c == ',') {
        if (!cur.empty()) parts.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
  }

  void handle(int line, const std::string& key, const std::string& value) {
    double d;
    std::int64_t n;
    if (key == "b") {
      if (number(line, key, value, &d)) cfg.b = d;
    } else if (key == "kappa") {
      if (number(line, key, value, &d)) {
        if (d < 0.0) {
          fail(line, key, "kappa must be >= 0");
        } else {
          cfg.kappa = d;
        }
      }
    } else if (key == "r") {
      if (number(line, key, value, &d)) {
        if (!(d > 0.0)) {
          fail(line, key, "r must be positive");
        } else {
          cfg.r = d;
        }
      }
    } else if (key == "nu") {
      if (integer(line, key, value, &n)) {
        if (n < 1) {
          fail(line, key, "nu must be >= 1");
        } else {
          cfg.nu = n;
        }
      }
    } else if (key == "t_max") {
      if (number(line, key, value, &d)) {
        if (!(d > 0.0)) {
          fail(line, key, "t_max must be positive");
        } else {
          cfg.t_max = d;
        }
      }
    } else if (key == "s_list") {
      cfg.s_list.clear();
      for (const std::string& part : split(value)) {
        try {
          cfg.s_list.push_back(parse_exponent(part));
        } catch (const std::exception& e) {
          fail(line, key, "bad exponent '" + part + "': " + e.what());
        }
      }
    } else if (key == "initial") {
      cfg.initial = value;
    } else if (key == "seed") {
      if (integer(line, key, value, &n)) cfg.seed = static_cast<std::uint64_t>(n);
    } else if (key == "steps") {
      if (integer(line, key, value, &n)) {
        if (n < 1) {
          fail(line, key, "steps must be >= 1");
        } else {
          cfg.steps = n;
        }
      }
    } else if (key == "amplitude_w") {
      if (number(line, key, value, &d)) {
        if (!(d > 0.0)) {
          fail(line, key, "amplitude_w must be positive");
        } else {
          cfg.amplitude_w = d;
        }
      }
    } else if (key == "amplitude_z") {
      if (number(line, key, value, &d)) {
        if (!(d >= 0.0)) {
          fail(line, key, "amplitude_z must be >= 0");
        } else {
          cfg.amplitude_z = d;
        }
      }
    } else if (key == "snapshot_times") {
      cfg.snapshot_times.clear();
      for (const std::string& part : split(value)) {
        if (number(line, key, part, &d)) cfg.snapshot_times.push_back(d);
      }
    } else if (key == "mesh_count") {
      if (integer(line, key, value, &n)) {
        if (n < 1) {
          fail(line, key, "mesh_count must be >= 1");
        } else {
          cfg.mesh_count = n;
        }
      }
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      fail(line, key, "unknown key");
    }
  }
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

ParseResult parse_config(const std::string& text) {
  Parser parser;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      parser.fail(lineno, "", "expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      parser.fail(lineno, "", "empty key");
      continue;
    }
    parser.handle(lineno, key, value);
  }

  ParseResult result;
  result.issues = std::move(parser.issues);
  if (result.issues.empty()) result.config = std::move(parser.cfg);
  return result;
}

std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "b = " << cfg.b << "\n";
  os << "kappa = " << cfg.kappa << "\n";
  os << "r = " << cfg.r << "\n";
  os << "nu = " << cfg.nu << "\n";
  os << "t_max = " << cfg.t_max << "\n";
  os << "s_list = ";
  const auto ss = cfg.effective_s_list();
  for (std::size_t i = 0; i < ss.size(); ++i) {
    os << (i ? "," : "") << exponent_to_string(ss[i]);
  }
  os << "\n";
  os << "initial = " << cfg.initial << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "steps = " << cfg.steps << "\n";
  os << "amplitude_w = " << cfg.amplitude_w << "\n";
  os << "amplitude_z = " << cfg.amplitude_z << "\n";
  os << "snapshot_times = ";
  const auto ts = cfg.effective_snapshot_times();
  for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? "," : "") << ts[i];
  os << "\n";
  os << "mesh_count = " << cfg.mesh_count << "\n";
  return os.str();
}

std::string config_hash(const RunConfig& cfg) {
  // FNV-1a 64
  const std::string text = canonical_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace wft
