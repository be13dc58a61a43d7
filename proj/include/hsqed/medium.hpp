#pragma once

#include <complex>

#include <Eigen/Core>

namespace hsqed {

using cplx = std::complex<double>;

// Natural units: hbar = c = eps0 = 1. The charge is carried separately so
// energies scale as q^2.
struct UnitSystem {
  double hbar = 1.0;
  double c = 1.0;
  double eps0 = 1.0;
};
inline constexpr UnitSystem kNaturalUnits{};

enum class Side { Left, Right };
enum class Polarization { TE, TM };

const char* to_string(Side side);
const char* to_string(Polarization pol);

// Dielectric filling z < 0 with refractive index n >= 1, vacuum for z > 0.
class Medium {
 public:
  explicit Medium(double n);

  double index() const { return n_; }
  double n2() const { return n_ * n_; }
  // (n^2 - 1) / (n^2 + 1): strength of the electrostatic image.
  double image_strength() const;
  // 2 / (n^2 + 1): strength of the transmitted Coulomb field.
  double transmission_strength() const;

 private:
  double n_;
};

// eps(z) / eps0. At the interface the average of both sides is returned.
double epsilon_profile(const Medium& medium, double z);

// Refracted normal wavenumber sqrt(n^2 kz^2 + (n^2 - 1) kpar^2).
// Principal branch, except that a real negative kz yields a real negative
// result so the refracted wave propagates in the same direction. On the
// evanescent segment kz = i t with 0 < t < Gamma the result is real and
// positive; within a few ulps of the branch point it is exactly zero.
cplx refracted_kz(const Medium& medium, double kpar, cplx kz);

// Gamma = kpar sqrt(n^2 - 1) / n. Vacuum kz = i t with 0 < t < Gamma are
// left-incident modes that are travelling inside the dielectric.
double evanescent_threshold(const Medium& medium, double kpar);

// Labels one mode of the continuum. kz is the vacuum-side normal wavenumber
// for both sides; for Left modes it may sit on the evanescent segment.
struct SpectralPoint {
  Eigen::Vector2d kpar{1.0, 0.0};
  cplx kz{1.0, 0.0};
  Side side = Side::Right;
  Polarization pol = Polarization::TM;

  double kpar_norm() const { return kpar.norm(); }
};

// omega = c sqrt(kpar^2 + kz^2); real and positive for every valid label.
double mode_frequency(const SpectralPoint& point);

}  // namespace hsqed
