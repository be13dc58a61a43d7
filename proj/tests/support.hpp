#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>

#include "hsqed/kernels.hpp"

namespace testing {

// splitmix64; fixed seeds keep every property test reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform(double a, double b) {
    return a + (b - a) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

inline double max_abs_diff(const hsqed::KernelTensor& a,
                           const hsqed::KernelTensor& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double rel_diff(const hsqed::KernelTensor& a,
                       const hsqed::KernelTensor& b) {
  return max_abs_diff(a, b) / b.cwiseAbs().maxCoeff();
}

}  // namespace testing
