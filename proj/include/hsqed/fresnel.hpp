#pragma once

#include "hsqed/medium.hpp"

namespace hsqed {

struct FresnelSet {
  cplx r_right;
  cplx t_right;
  cplx r_left;
  cplx t_left;
};

// Reflection and transmission amplitudes for a wave incident from the vacuum
// (right) and from the dielectric (left). kz is the vacuum-side normal
// wavenumber; it may be i t on the evanescent segment. Throws DomainError
// at kz = 0.
FresnelSet fresnel_coefficients(const Medium& medium, Polarization pol,
                                double kpar, cplx kz);

// Same, with the refracted wavenumber supplied by the caller.
FresnelSet fresnel_coefficients(const Medium& medium, Polarization pol,
                                cplx kz, cplx kzd);

// Residual of the identities r_L + r_R = 0 and
// r_R r_R* + (kzd/kz) t_R t_R* = 1 (the latter only for real kz and kzd),
// as the larger of the two absolute violations.
double cancellation_residual(const Medium& medium, Polarization pol,
                             double kpar, cplx kz);

}  // namespace hsqed
