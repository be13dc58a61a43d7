#include "hsqed/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hsqed {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& src, int line) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0' || errno == ERANGE) {
    throw ConfigError(src, line, "expected a number, got '" + v + "'");
  }
  return d;
}

long long parse_int(const std::string& v, const std::string& src, int line) {
  errno = 0;
  char* end = nullptr;
  const long long i = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || *end != '\0' || errno == ERANGE) {
    throw ConfigError(src, line, "expected an integer, got '" + v + "'");
  }
  return i;
}

bool parse_bool(const std::string& v, const std::string& src, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(src, line, "expected true or false, got '" + v + "'");
}

double positive(double d, const std::string& src, int line) {
  if (!(d > 0.0)) throw ConfigError(src, line, "value must be positive");
  return d;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line,
                         const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      line_(line) {}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  using Setter = std::function<void(const std::string&, int)>;
  auto tol = [&](double& slot) -> Setter {
    return [&slot, &source](const std::string& v, int line) {
      slot = positive(parse_double(v, source, line), source, line);
    };
  };
  const std::map<std::string, Setter> setters = {
      {"quad.abs_tol", tol(cfg.quad.abs_tol)},
      {"quad.rel_tol", tol(cfg.quad.rel_tol)},
      {"quad.trunc_decades", tol(cfg.quad.damped_truncation_decades)},
      {"quad.max_periods",
       [&](const std::string& v, int line) {
         const long long i = parse_int(v, source, line);
         if (i < 2 || i > 1000000) throw ConfigError(source, line, "out of range");
         cfg.quad.max_oscillation_periods = static_cast<int>(i);
       }},
      {"quad.accel_order",
       [&](const std::string& v, int line) {
         const long long i = parse_int(v, source, line);
         if (i < 1 || i > 40) throw ConfigError(source, line, "out of range 1..40");
         cfg.quad.acceleration_order = static_cast<int>(i);
       }},
      {"quad.cut_substitution",
       [&](const std::string& v, int line) {
         if (v == "trig") {
           cfg.quad.cut_substitution = spectral::CutSubstitution::TrigSubstitution;
         } else if (v == "none") {
           cfg.quad.cut_substitution = spectral::CutSubstitution::None;
         } else {
           throw ConfigError(source, line, "expected trig or none, got '" + v + "'");
         }
       }},
      {"seed",
       [&](const std::string& v, int line) {
         const long long i = parse_int(v, source, line);
         if (i < 0) throw ConfigError(source, line, "seed must be non-negative");
         cfg.seed = static_cast<std::uint64_t>(i);
       }},
      {"report.record_runtime",
       [&](const std::string& v, int line) {
         cfg.record_runtime = parse_bool(v, source, line);
       }},
      {"run.threads",
       [&](const std::string& v, int line) {
         const long long i = parse_int(v, source, line);
         if (i < 0 || i > 1024) throw ConfigError(source, line, "out of range");
         cfg.threads = static_cast<int>(i);
       }},
      {"tol.fresnel", tol(cfg.tol.fresnel)},
      {"tol.mode_matching", tol(cfg.tol.mode_matching)},
      {"tol.mode_divergence", tol(cfg.tol.mode_divergence)},
      {"tol.poisson", tol(cfg.tol.poisson)},
      {"tol.residue", tol(cfg.tol.residue)},
      {"tol.residue_te", tol(cfg.tol.residue_te)},
      {"tol.kernel", tol(cfg.tol.kernel)},
      {"tol.curl", tol(cfg.tol.curl)},
      {"tol.energy", tol(cfg.tol.energy)},
      {"tol.reflector_slope", tol(cfg.tol.reflector_slope)},
  };

  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  int last_quad_line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source, line, "expected 'key = value'");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(source, line, "unknown key '" + key + "'");
    if (!seen.insert(key).second) {
      throw ConfigError(source, line, "duplicate key '" + key + "'");
    }
    it->second(value, line);
    if (key.rfind("quad.", 0) == 0) last_quad_line = line;
  }
  try {
    cfg.quad.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, last_quad_line, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str(), path);
}

}  // namespace hsqed
