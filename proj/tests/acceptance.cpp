// Runs acceptance criteria 1..10 and prints one PASS/FAIL line per criterion.
// A criterion passes when every check passes and it finishes within budget.
// Usage: acceptance [report.json]

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "hsqed/report.hpp"
#include "hsqed/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  double budget_s;
};

const std::vector<Criterion> kCriteria{
    {1, "Fresnel identities", 1.0},
    {2, "mode matching and gauge divergence", 10.0},
    {3, "residue vs quadrature", 120.0},
    {4, "generalized-delta closed form", 180.0},
    {5, "gauge-difference kernel", 120.0},
    {6, "true-Coulomb kernel and n-independence", 120.0},
    {7, "Poisson jump identity", 1.0},
    {8, "curl annihilation", 60.0},
    {9, "energy ratio and gauge invariance", 180.0},
    {10, "perfect-reflector limit", 120.0},
};

}  // namespace

int main(int argc, char** argv) {
  hsqed::RunConfig cfg;
  std::vector<hsqed::CheckReport> all;
  bool ok = true;
  for (const Criterion& c : kCriteria) {
    const auto start = std::chrono::steady_clock::now();
    const auto reports = hsqed::run_criterion(c.id, cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    int passed = 0;
    double worst = 0.0;
    const hsqed::CheckReport* worst_report = nullptr;
    for (const auto& r : reports) {
      passed += r.pass ? 1 : 0;
      const double margin = r.tol > 0.0 ? std::min(r.abs_err, r.rel_err) / r.tol : 0.0;
      if (!(margin <= worst)) {
        worst = margin;
        worst_report = &r;
      }
    }
    const bool in_budget = secs < c.budget_s;
    const bool pass = !reports.empty() && passed == static_cast<int>(reports.size()) &&
                      in_budget;
    ok = ok && pass;
    std::printf("C%-2d %-4s %-40s checks %d/%zu  worst err/tol %.3g  %.2f s (budget %.0f s)%s\n",
                c.id, pass ? "PASS" : "FAIL", c.title, passed, reports.size(),
                worst, secs, c.budget_s, in_budget ? "" : "  OVER BUDGET");
    if (worst_report != nullptr && !worst_report->pass) {
      std::printf("    worst: %s [%s]\n", worst_report->check_name.c_str(),
                  hsqed::param_summary(*worst_report).c_str());
    }
    std::fflush(stdout);
    all.insert(all.end(), reports.begin(), reports.end());
  }
  if (argc > 1) hsqed::write_file_atomic(argv[1], hsqed::reports_to_json(all));
  return ok ? 0 : 1;
}
