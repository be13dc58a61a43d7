#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Core>

#include "hsqed/fresnel.hpp"
#include "hsqed/medium.hpp"

namespace hsqed {

using Vector3c = Eigen::Vector3cd;

// Unit polarization for a plane wave with complex wavevector k = (kx, ky, q),
// kx and ky real. TE is (ky, -kx, 0)/kpar; TM is (q kx, q ky, -kpar^2) /
// (kpar sqrt(kpar^2 + q^2)). Both use the bilinear (unconjugated) norm, so
// k . e = 0 also holds for evanescent q. Throws DomainError at kpar = 0.
Vector3c polarization_vector(Polarization pol, const Vector3c& k);

struct PlaneWave {
  cplx amplitude;
  Vector3c wavevector;
  Vector3c polarization;
};

// Plane-wave decomposition of a normalized mode. The amplitudes already
// include (2 pi)^(-3/2), and the extra 1/n of left-incident modes.
struct ModeStructure {
  std::array<PlaneWave, 2> vacuum{};
  std::size_t vacuum_count = 0;
  std::array<PlaneWave, 2> dielectric{};
  std::size_t dielectric_count = 0;
  cplx kzd;
  FresnelSet fresnel;
};

enum class Region { Vacuum, Dielectric };

ModeStructure mode_structure(const Medium& medium, const SpectralPoint& point);

// Field of the mode at r. The region is chosen from the sign of z, with
// z = 0 taken on the vacuum side. The explicit-region overload evaluates the
// analytic continuation of one side's expression.
Vector3c evaluate(const ModeStructure& mode, const Eigen::Vector3d& r);
Vector3c evaluate(const ModeStructure& mode, const Eigen::Vector3d& r,
                  Region region);

// Profile along the normal through r_par = 0.
Vector3c evaluate_profile(const ModeStructure& mode, double z);

Vector3c carniglia_mandel_mode(const Medium& medium, const SpectralPoint& point,
                               const Eigen::Vector3d& r);

// Mode coefficient g of the interface charge for TM modes:
// (2 pi)^(-3/2) ((n^2 - 1) / 2n^2) (1 + r_R) for right-incident modes and
// (2 pi)^(-3/2) ((n^2 - 1) / 2n^2) t_L / n for left-incident modes.
// kz is the vacuum-side label, as in SpectralPoint.
cplx surface_charge_mode(const Medium& medium, Side side, double kpar, cplx kz);

// Mode coefficient of the surface polarization charge at r_par = 0, from the
// jump of the normal field across z = 0: sigma_a = eps0 [E_z] with
// E_a = i omega sqrt(hbar / 2 eps0 omega) f_a.
cplx surface_charge_from_field_jump(const Medium& medium,
                                    const SpectralPoint& point);

// Mode coefficient of the longitudinal potential chi(r) = -integral G0 div A
// at height z along the normal through the origin. With time_derivative set,
// the coefficient of d(chi)/dt is returned instead. TE modes give zero.
cplx chi_mode_coefficient(const Medium& medium, const SpectralPoint& point,
                          double z, bool time_derivative);

}  // namespace hsqed
