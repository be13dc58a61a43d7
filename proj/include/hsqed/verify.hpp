#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsqed/config.hpp"
#include "hsqed/greens.hpp"
#include "hsqed/kernels.hpp"
#include "hsqed/report.hpp"

namespace hsqed {

enum class Suite { Fresnel, Modes, Kernels, Energy, All };

const char* to_string(Suite suite);
Suite suite_from_string(const std::string& name);

// Acceptance criteria (numbered 1..10) covered by a suite:
//   fresnel 1; modes 2, 7; kernels 3, 4, 5, 6, 8, 10; energy 9.
std::vector<int> criteria_of(Suite suite);

// Checks of one criterion. Exceptions raised by a check become failing
// reports carrying an "error" param.
std::vector<CheckReport> run_criterion(int criterion, const RunConfig& cfg);

std::vector<CheckReport> run_verification_suite(Suite suite,
                                                const RunConfig& cfg);

// Separated (r, r') pairs, half with z > 0 and half with z < 0, drawn from
// the seeded generator.
std::vector<PointPair> kernel_pair_set(std::uint64_t seed, std::size_t count);

// Assembled kernel against its closed form at each pair. For
// PerfectReflector the assembled GeneralizedDelta(n) is compared with the
// limit plus its exact finite-n correction (alpha - 1) grad grad' G0(image).
std::vector<CheckReport> verify_kernel_points(const Medium& medium,
                                              KernelKind kind,
                                              const std::vector<PointPair>& pairs,
                                              const RunConfig& cfg);

}  // namespace hsqed
