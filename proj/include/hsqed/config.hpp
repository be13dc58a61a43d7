#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "hsqed/spectral.hpp"

namespace hsqed {

// Parse or validation error; the message starts with "<source>:<line>: ".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Tolerances of the verification suites, one per acceptance check.
struct SuiteTolerances {
  double fresnel = 1e-12;
  double mode_matching = 1e-10;
  double mode_divergence = 1e-6;
  double poisson = 1e-12;
  double residue = 1e-6;
  double residue_te = 1e-8;
  double kernel = 1e-4;
  double curl = 1e-6;
  double energy = 1e-4;
  double reflector_slope = 0.1;
};

struct RunConfig {
  spectral::QuadratureSpec quad;
  SuiteTolerances tol;
  std::uint64_t seed = 42;
  // With false, runtime_ms is written as 0 so reports are reproducible byte
  // for byte.
  bool record_runtime = true;
  // 0 selects std::thread::hardware_concurrency().
  int threads = 0;
};

// Flat "key = value" lines; '#' starts a comment. Recognized keys:
//   quad.abs_tol quad.rel_tol quad.max_periods quad.accel_order
//   quad.trunc_decades quad.cut_substitution (trig | none)
//   seed report.record_runtime (true | false) run.threads
//   tol.fresnel tol.mode_matching tol.mode_divergence tol.poisson
//   tol.residue tol.residue_te tol.kernel tol.curl tol.energy
//   tol.reflector_slope
// Unknown keys, duplicate keys and malformed values are errors.
RunConfig parse_config(const std::string& text,
                       const std::string& source = "config");
RunConfig load_config(const std::string& path);

}  // namespace hsqed
