#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace hsqed {

enum class ToleranceMode { Absolute, Relative, Either };

using ParamValue = std::variant<double, std::string>;

struct CheckReport {
  std::string check_name;
  std::map<std::string, ParamValue> params;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::int64_t runtime_ms = 0;

  bool operator==(const CheckReport&) const = default;
};

// Fills in pass from the errors, the tolerance and the mode. NaN errors fail.
CheckReport make_check(std::string name, std::map<std::string, ParamValue> params,
                       std::vector<double> lhs, std::vector<double> rhs,
                       double abs_err, double rel_err, double tol,
                       ToleranceMode mode, std::int64_t runtime_ms = 0);

bool all_pass(const std::vector<CheckReport>& reports);

// Fixed-precision rendering with 17 significant digits.
std::string format_number(double value);

// "n=1.5;z=0.25" style summary of the params, in key order.
std::string param_summary(const CheckReport& report);

std::string reports_to_json(const std::vector<CheckReport>& reports);
std::string reports_to_csv(const std::vector<CheckReport>& reports);

// Throws std::runtime_error on malformed input.
std::vector<CheckReport> reports_from_json(const std::string& text);

// Writes through a temporary file in the same directory and renames it over
// the target. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hsqed
