#include "hsqed/medium.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hsqed/errors.hpp"

namespace hsqed {

const char* to_string(Side side) {
  return side == Side::Left ? "Left" : "Right";
}

const char* to_string(Polarization pol) {
  return pol == Polarization::TE ? "TE" : "TM";
}

Medium::Medium(double n) : n_(n) {
  if (!std::isfinite(n) || n < 1.0) {
    throw DomainError("refractive index must be finite and >= 1, got " +
                      std::to_string(n));
  }
}

double Medium::image_strength() const { return (n2() - 1.0) / (n2() + 1.0); }

double Medium::transmission_strength() const { return 2.0 / (n2() + 1.0); }

double epsilon_profile(const Medium& medium, double z) {
  if (z > 0.0) return 1.0;
  if (z < 0.0) return medium.n2();
  return 0.5 * (1.0 + medium.n2());
}

double evanescent_threshold(const Medium& medium, double kpar) {
  const double n = medium.index();
  return std::abs(kpar) * std::sqrt((n - 1.0) * (n + 1.0)) / n;
}

cplx refracted_kz(const Medium& medium, double kpar, cplx kz) {
  const double n = medium.index();
  if (n == 1.0) return kz;
  const double n2 = medium.n2();

  if (kz.real() == 0.0 && kz.imag() >= 0.0) {
    // kz = i t. Factor n^2 (Gamma^2 - t^2) to keep accuracy near the branch
    // point, and snap to it when t agrees with Gamma to a few ulps.
    const double t = kz.imag();
    const double gamma = evanescent_threshold(medium, kpar);
    const double gap = gamma - t;
    if (std::abs(gap) <= 8.0 * std::numeric_limits<double>::epsilon() * gamma) {
      return {0.0, 0.0};
    }
    const double q = n2 * gap * (gamma + t);
    return q >= 0.0 ? cplx(std::sqrt(q), 0.0) : cplx(0.0, std::sqrt(-q));
  }

  if (kz.imag() == 0.0) {
    const double k = kz.real();
    const double r = std::sqrt(n2 * k * k + (n2 - 1.0) * kpar * kpar);
    return {k < 0.0 ? -r : r, 0.0};
  }
  return std::sqrt(n2 * kz * kz + (n2 - 1.0) * kpar * kpar);
}

double mode_frequency(const SpectralPoint& point) {
  const double kp2 = point.kpar.squaredNorm();
  const cplx w2 = kp2 + point.kz * point.kz;
  if (!(w2.real() > 0.0) ||
      std::abs(w2.imag()) > 1e-12 * std::max(1.0, std::abs(w2.real()))) {
    throw DomainError("mode label has no positive real frequency");
  }
  return kNaturalUnits.c * std::sqrt(w2.real());
}

}  // namespace hsqed
