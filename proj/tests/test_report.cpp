#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hsqed/report.hpp"

using namespace hsqed;

namespace {

CheckReport sample(bool pass) {
  return make_check("fresnel.reflection_antisymmetry",
                    {{"n", 1.5}, {"seed", 42.0}, {"kind", std::string("TM, \"x\"")}},
                    {0.1, 1.0 / 3.0}, {2.0}, 1e-13, pass ? 1e-14 : 1.0, 1e-12,
                    ToleranceMode::Relative, 7);
}

}  // namespace

TEST_CASE("pass follows the tolerance mode") {
  CHECK(make_check("a", {}, {}, {}, 1e-3, 1e-9, 1e-6, ToleranceMode::Relative).pass);
  CHECK_FALSE(make_check("a", {}, {}, {}, 1e-3, 1e-9, 1e-6, ToleranceMode::Absolute).pass);
  CHECK(make_check("a", {}, {}, {}, 1e-3, 1e-9, 1e-6, ToleranceMode::Either).pass);
  CHECK_FALSE(make_check("a", {}, {}, {}, std::nan(""), std::nan(""), 1.0,
                         ToleranceMode::Either)
                  .pass);
  CHECK(all_pass({}));
  CHECK_FALSE(all_pass({sample(true), sample(false)}));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("empty report") {
  CHECK(reports_to_json({}) == "[]\n");
  CHECK(reports_from_json(reports_to_json({})).empty());
}

TEST_CASE("CSV export") {
  const std::string csv = reports_to_csv({sample(true)});
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "check_name,param_summary,lhs,rhs,abs_err,rel_err,tol,pass,runtime_ms");
  CHECK(row.find(",true,7") != std::string::npos);
  CHECK(row.rfind("fresnel.reflection_antisymmetry,", 0) == 0);
  CHECK(row.find("0.10000000000000001;0.33333333333333331") != std::string::npos);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("JSON round trip is exact and deterministic") {
  const std::vector<CheckReport> reports{sample(true), sample(false)};
  const std::string json = reports_to_json(reports);
  const auto back = reports_from_json(json);
  CHECK(back == reports);
  CHECK(reports_to_json(back) == json);
  CHECK(json.find("\"check_name\": \"fresnel.reflection_antisymmetry\"") != std::string::npos);
  CHECK(json.find("\"lhs\": [0.10000000000000001, 0.33333333333333331]") != std::string::npos);
  CHECK(json.find("\"rhs\": 2,") != std::string::npos);
  CHECK_THROWS_AS(reports_from_json("{"), std::runtime_error);
  CHECK_THROWS_AS(reports_from_json("[{\"check_name\": 1}]"), std::runtime_error);
}

TEST_CASE("non-finite errors are written as null") {
  const CheckReport r =
      make_check("x", {}, {1.0}, {2.0}, std::nan(""), INFINITY, 1.0, ToleranceMode::Either);
  const std::string json = reports_to_json({r});
  CHECK(json.find("\"abs_err\": null") != std::string::npos);
  const auto back = reports_from_json(json);
  CHECK(std::isnan(back[0].abs_err));
}

TEST_CASE("atomic file write") {
  const auto dir = std::filesystem::temp_directory_path() / "hsqed_report_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.json").string();
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "second");
  CHECK(std::distance(std::filesystem::directory_iterator(dir),
                      std::filesystem::directory_iterator()) == 1);
  std::filesystem::remove_all(dir);
  CHECK_THROWS(write_file_atomic((dir / "missing" / "x").string(), "y"));
}
