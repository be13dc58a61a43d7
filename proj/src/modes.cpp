#include "hsqed/modes.hpp"

#include <cmath>
#include <numbers>

#include "hsqed/errors.hpp"

namespace hsqed {
namespace {

const double kModeNorm = std::pow(2.0 * std::numbers::pi, -1.5);

PlaneWave wave(cplx amplitude, double kx, double ky, cplx q,
               Polarization pol) {
  PlaneWave w;
  w.amplitude = amplitude;
  w.wavevector = Vector3c(kx, ky, q);
  w.polarization = polarization_vector(pol, w.wavevector);
  return w;
}

}  // namespace

Vector3c polarization_vector(Polarization pol, const Vector3c& k) {
  const double kx = k.x().real();
  const double ky = k.y().real();
  const double kp = std::hypot(kx, ky);
  if (kp == 0.0) {
    throw DomainError("polarization frame undefined for kpar = 0");
  }
  if (pol == Polarization::TE) {
    return Vector3c(ky / kp, -kx / kp, 0.0);
  }
  const cplx q = k.z();
  const cplx norm = kp * std::sqrt(kp * kp + q * q);
  return Vector3c(q * kx / norm, q * ky / norm, -kp * kp / norm);
}

ModeStructure mode_structure(const Medium& medium, const SpectralPoint& point) {
  const double kx = point.kpar.x();
  const double ky = point.kpar.y();
  const double kp = point.kpar_norm();
  const cplx kz = point.kz;

  ModeStructure m;
  m.kzd = refracted_kz(medium, kp, kz);
  m.fresnel = fresnel_coefficients(medium, point.pol, kz, m.kzd);
  const FresnelSet& f = m.fresnel;

  if (point.side == Side::Right) {
    const double a = kModeNorm;
    m.vacuum[0] = wave(a, kx, ky, -kz, point.pol);
    m.vacuum[1] = wave(a * f.r_right, kx, ky, kz, point.pol);
    m.vacuum_count = 2;
    m.dielectric[0] = wave(a * f.t_right, kx, ky, -m.kzd, point.pol);
    m.dielectric_count = 1;
  } else {
    const double a = kModeNorm / medium.index();
    m.dielectric[0] = wave(a, kx, ky, m.kzd, point.pol);
    m.dielectric[1] = wave(a * f.r_left, kx, ky, -m.kzd, point.pol);
    m.dielectric_count = 2;
    m.vacuum[0] = wave(a * f.t_left, kx, ky, kz, point.pol);
    m.vacuum_count = 1;
  }
  return m;
}

Vector3c evaluate(const ModeStructure& mode, const Eigen::Vector3d& r,
                  Region region) {
  const auto& waves = region == Region::Vacuum ? mode.vacuum : mode.dielectric;
  const std::size_t count =
      region == Region::Vacuum ? mode.vacuum_count : mode.dielectric_count;
  Vector3c out = Vector3c::Zero();
  for (std::size_t i = 0; i < count; ++i) {
    const PlaneWave& w = waves[i];
    const cplx phase = w.wavevector.x() * r.x() + w.wavevector.y() * r.y() +
                       w.wavevector.z() * r.z();
    out += (w.amplitude * std::exp(cplx(0.0, 1.0) * phase)) * w.polarization;
  }
  return out;
}

Vector3c evaluate(const ModeStructure& mode, const Eigen::Vector3d& r) {
  return evaluate(mode, r, r.z() >= 0.0 ? Region::Vacuum : Region::Dielectric);
}

Vector3c evaluate_profile(const ModeStructure& mode, double z) {
  return evaluate(mode, Eigen::Vector3d(0.0, 0.0, z));
}

Vector3c carniglia_mandel_mode(const Medium& medium, const SpectralPoint& point,
                               const Eigen::Vector3d& r) {
  return evaluate(mode_structure(medium, point), r);
}

cplx surface_charge_mode(const Medium& medium, Side side, double kpar,
                         cplx kz) {
  const FresnelSet f =
      fresnel_coefficients(medium, Polarization::TM, kpar, kz);
  const double n2 = medium.n2();
  const double pref = kModeNorm * (n2 - 1.0) / (2.0 * n2);
  if (side == Side::Right) return pref * (1.0 + f.r_right);
  return pref * f.t_left / medium.index();
}

cplx surface_charge_from_field_jump(const Medium& medium,
                                    const SpectralPoint& point) {
  const ModeStructure m = mode_structure(medium, point);
  const Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  const cplx jump = evaluate(m, origin, Region::Vacuum).z() -
                    evaluate(m, origin, Region::Dielectric).z();
  const double w = mode_frequency(point);
  return cplx(0.0, w) * std::sqrt(kNaturalUnits.hbar / (2.0 * w)) * jump *
         kNaturalUnits.eps0;
}

cplx chi_mode_coefficient(const Medium& medium, const SpectralPoint& point,
                          double z, bool time_derivative) {
  if (point.pol == Polarization::TE) return {0.0, 0.0};
  const double kp = point.kpar_norm();
  const double w = mode_frequency(point);
  const cplx g = surface_charge_mode(medium, point.side, kp, point.kz);
  const cplx chi =
      std::sqrt(kNaturalUnits.hbar / (2.0 * w * w * w)) * g *
      std::exp(-kp * std::abs(z));
  return time_derivative ? cplx(0.0, -w) * chi : chi;
}

}  // namespace hsqed
