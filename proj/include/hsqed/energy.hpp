#pragma once

#include "hsqed/medium.hpp"
#include "hsqed/spectral.hpp"

namespace hsqed {

// Weights of the radiative shift and of the Coulomb image energy in a
// gauge-invariant total: (n^2 - 1) / 2n^2 and (n^2 + 1) / 2n^2.
struct RedistributionFactors {
  double radiative = 0.0;
  double coulomb = 0.0;
};
RedistributionFactors redistribution_factors(const Medium& medium);

struct ShiftResult {
  double delta_e = 0.0;          // second-order shift, left + right modes
  double v_es = 0.0;             // classical image energy
  double ratio = 0.0;            // delta_e / v_es, 0 when v_es = 0
  double expected_ratio = 0.0;   // (n^2 - 1) / 2n^2
  double left_contribution = 0.0;
  double right_contribution = 0.0;
  double error_estimate = 0.0;
};

// Second-order shift of a static charge q at height z0 from the coupling to
// the interface polarization charge, summed over right- and left-incident TM
// modes. Throws DomainError for z0 <= 0 and NonConvergenceError.
ShiftResult second_order_shift(double q, const Medium& medium, double z0,
                               const spectral::QuadratureSpec& spec);

// delta_e + ((n^2 + 1) / 2n^2) v_es; equals v_es for the exact shift.
double gauge_invariance_sum(double q, const Medium& medium, double z0,
                            const spectral::QuadratureSpec& spec);

// c-number left by the unitary transformation that removes the q chi_dot
// coupling: q^2 sum_modes omega |chi_a(r0)|^2, built from chi mode
// coefficients. Equals -delta_e.
double double_commutator_cnumber(double q, const Medium& medium, double z0,
                                 const spectral::QuadratureSpec& spec);

}  // namespace hsqed
