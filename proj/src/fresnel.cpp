#include "hsqed/fresnel.hpp"

#include <algorithm>
#include <cmath>

#include "hsqed/errors.hpp"

namespace hsqed {

FresnelSet fresnel_coefficients(const Medium& medium, Polarization pol,
                                cplx kz, cplx kzd) {
  if (kz == cplx(0.0, 0.0)) {
    throw DomainError("Fresnel coefficients are singular at kz = 0");
  }
  const double n = medium.index();
  const double n2 = medium.n2();
  FresnelSet f;
  if (pol == Polarization::TE) {
    const cplx den = kz + kzd;
    f.r_right = (kz - kzd) / den;
    f.t_right = 2.0 * kz / den;
  } else {
    const cplx den = n2 * kz + kzd;
    f.r_right = (n2 * kz - kzd) / den;
    f.t_right = 2.0 * n * kz / den;
  }
  f.r_left = -f.r_right;
  f.t_left = (kzd / kz) * f.t_right;
  return f;
}

FresnelSet fresnel_coefficients(const Medium& medium, Polarization pol,
                                double kpar, cplx kz) {
  return fresnel_coefficients(medium, pol, kz, refracted_kz(medium, kpar, kz));
}

double cancellation_residual(const Medium& medium, Polarization pol,
                             double kpar, cplx kz) {
  const cplx kzd = refracted_kz(medium, kpar, kz);
  const FresnelSet f = fresnel_coefficients(medium, pol, kz, kzd);
  double res = std::abs(f.r_left + f.r_right);
  if (kz.imag() == 0.0 && kzd.imag() == 0.0) {
    const double flux = std::norm(f.r_right) +
                        (kzd.real() / kz.real()) * std::norm(f.t_right);
    res = std::max(res, std::abs(flux - 1.0));
  }
  return res;
}

}  // namespace hsqed
