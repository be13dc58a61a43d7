#include "hsqed/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include <unistd.h>

namespace hsqed {
namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

// JSON has no NaN or infinity; those are written as null.
std::string json_number(double v) {
  return std::isfinite(v) ? format_number(v) : std::string("null");
}

std::string json_numbers(const std::vector<double>& v) {
  if (v.size() == 1) return json_number(v[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += json_number(v[i]);
  }
  return out + "]";
}

std::string csv_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ";";
    out += format_number(v[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double number_from(const nlohmann::json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!j.is_number()) throw std::runtime_error("expected a number in report");
  return j.get<double>();
}

std::vector<double> numbers_from(const nlohmann::json& j) {
  std::vector<double> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(number_from(e));
  } else {
    out.push_back(number_from(j));
  }
  return out;
}

}  // namespace

CheckReport make_check(std::string name, std::map<std::string, ParamValue> params,
                       std::vector<double> lhs, std::vector<double> rhs,
                       double abs_err, double rel_err, double tol,
                       ToleranceMode mode, std::int64_t runtime_ms) {
  CheckReport r;
  r.check_name = std::move(name);
  r.params = std::move(params);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.abs_err = abs_err;
  r.rel_err = rel_err;
  r.tol = tol;
  r.runtime_ms = runtime_ms;
  const bool abs_ok = abs_err <= tol;
  const bool rel_ok = rel_err <= tol;
  switch (mode) {
    case ToleranceMode::Absolute: r.pass = abs_ok; break;
    case ToleranceMode::Relative: r.pass = rel_ok; break;
    case ToleranceMode::Either: r.pass = abs_ok || rel_ok; break;
  }
  return r;
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.pass) return false;
  }
  return true;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string param_summary(const CheckReport& report) {
  std::string out;
  for (const auto& [key, value] : report.params) {
    if (!out.empty()) out += ';';
    out += key + '=';
    if (const double* d = std::get_if<double>(&value)) {
      out += format_number(*d);
    } else {
      out += std::get<std::string>(value);
    }
  }
  return out;
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  if (reports.empty()) return "[]\n";
  std::ostringstream os;
  os << "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const CheckReport& r = reports[i];
    os << "  {\n";
    os << "    \"check_name\": " << quote(r.check_name) << ",\n";
    os << "    \"params\": {";
    bool first = true;
    for (const auto& [key, value] : r.params) {
      os << (first ? "" : ", ") << quote(key) << ": ";
      if (const double* d = std::get_if<double>(&value)) {
        os << json_number(*d);
      } else {
        os << quote(std::get<std::string>(value));
      }
      first = false;
    }
    os << "},\n";
    os << "    \"lhs\": " << json_numbers(r.lhs) << ",\n";
    os << "    \"rhs\": " << json_numbers(r.rhs) << ",\n";
    os << "    \"abs_err\": " << json_number(r.abs_err) << ",\n";
    os << "    \"rel_err\": " << json_number(r.rel_err) << ",\n";
    os << "    \"tol\": " << json_number(r.tol) << ",\n";
    os << "    \"pass\": " << (r.pass ? "true" : "false") << ",\n";
    os << "    \"runtime_ms\": " << r.runtime_ms << "\n";
    os << "  }" << (i + 1 < reports.size() ? "," : "") << "\n";
  }
  os << "]\n";
  return os.str();
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "check_name,param_summary,lhs,rhs,abs_err,rel_err,tol,pass,runtime_ms\n";
  for (const CheckReport& r : reports) {
    os << csv_field(r.check_name) << ',' << csv_field(param_summary(r)) << ','
       << csv_numbers(r.lhs) << ',' << csv_numbers(r.rhs) << ','
       << format_number(r.abs_err) << ',' << format_number(r.rel_err) << ','
       << format_number(r.tol) << ',' << (r.pass ? "true" : "false") << ','
       << r.runtime_ms << '\n';
  }
  return os.str();
}

std::vector<CheckReport> reports_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("malformed report JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::runtime_error("report JSON must be an array");
  std::vector<CheckReport> out;
  for (const auto& j : doc) {
    CheckReport r;
    try {
      r.check_name = j.at("check_name").get<std::string>();
      for (const auto& [key, value] : j.at("params").items()) {
        if (value.is_string()) {
          r.params[key] = value.get<std::string>();
        } else {
          r.params[key] = number_from(value);
        }
      }
      r.lhs = numbers_from(j.at("lhs"));
      r.rhs = numbers_from(j.at("rhs"));
      r.abs_err = number_from(j.at("abs_err"));
      r.rel_err = number_from(j.at("rel_err"));
      r.tol = number_from(j.at("tol"));
      r.pass = j.at("pass").get<bool>();
      r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("malformed check report: ") + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace '" + path + "': " + ec.message());
  }
}

}  // namespace hsqed
