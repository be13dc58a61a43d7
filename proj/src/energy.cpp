#include "hsqed/energy.hpp"

#include <cmath>
#include <numbers>

#include "hsqed/errors.hpp"
#include "hsqed/greens.hpp"
#include "hsqed/modes.hpp"

namespace hsqed {
namespace {

using spectral::QuadratureSpec;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_height(double z0) {
  if (!(z0 > 0.0) || !std::isfinite(z0)) {
    throw DomainError("charge height z0 must be positive");
  }
}

// Mode weights per unit e^{-2 kpar z0}: sum over modes of w(omega) |g|^2 for
// right (component 0) and left (component 1) incidence, where the caller
// picks w through `power` (w = omega^power).
Eigen::Vector2d mode_weights(const Medium& medium, double kappa, int power,
                             const QuadratureSpec& spec, double& err) {
  const double n2 = medium.n2();
  auto wpow = [&](double w2) { return std::pow(w2, 0.5 * power); };

  auto right = [&](double k) {
    const cplx g = surface_charge_mode(medium, Side::Right, kappa, cplx(k, 0.0));
    return std::norm(g) * wpow(kappa * kappa + k * k);
  };
  auto left = [&](double k) {
    const cplx kz(k, 0.0);
    const double kzd = refracted_kz(medium, kappa, kz).real();
    const cplx g = surface_charge_mode(medium, Side::Left, kappa, kz);
    return n2 * k / kzd * std::norm(g) * wpow(kappa * kappa + k * k);
  };
  auto evanescent = [&](double t) {
    const cplx kz(0.0, t);
    const double kzd = refracted_kz(medium, kappa, kz).real();
    if (!(kzd > 0.0)) return 0.0;
    const cplx g = surface_charge_mode(medium, Side::Left, kappa, kz);
    return n2 * t / kzd * std::norm(g) * wpow(kappa * kappa - t * t);
  };

  const auto r = spectral::halfline_integral(right, kappa, spec);
  const auto l = spectral::halfline_integral(left, kappa, spec);
  const auto e = spectral::cut_segment_integral(
      evanescent, evanescent_threshold(medium, kappa), spec);
  if (!(r.converged && l.converged && e.converged)) {
    err = std::max(err, r.error_estimate + l.error_estimate + e.error_estimate);
  }
  return {r.value, l.value + e.value};
}

// q^2 / 2 * integral d^2k e^{-2 kpar z0} sum_modes omega^power |g|^2,
// split into right and left contributions.
spectral::IntegralResult<Eigen::Vector2d> mode_sum(const Medium& medium,
                                                   double z0, int power,
                                                   const QuadratureSpec& spec) {
  double inner_err = 0.0;
  auto f = [&](double kappa) -> Eigen::Vector2d {
    return kTwoPi * kappa * mode_weights(medium, kappa, power, spec, inner_err);
  };
  auto r = spectral::damped_radial_transform(f, 2.0 * z0, 0, 0.0, spec);
  r.error_estimate += inner_err;
  return r;
}

}  // namespace

RedistributionFactors redistribution_factors(const Medium& medium) {
  const double n2 = medium.n2();
  const double radiative = (n2 - 1.0) / (2.0 * n2);
  return {radiative, 1.0 - radiative};
}

ShiftResult second_order_shift(double q, const Medium& medium, double z0,
                               const QuadratureSpec& spec) {
  check_height(z0);
  spec.validate();
  const auto r = mode_sum(medium, z0, -2, spec);
  const double pref = -0.5 * q * q;
  if (!r.converged) {
    throw NonConvergenceError("energy shift quadrature did not converge");
  }
  ShiftResult out;
  out.right_contribution = pref * r.value(0);
  out.left_contribution = pref * r.value(1);
  out.delta_e = out.right_contribution + out.left_contribution;
  out.error_estimate = std::abs(pref) * r.error_estimate;
  out.v_es = image_potential_ves(q, medium, z0);
  out.ratio = out.v_es == 0.0 ? 0.0 : out.delta_e / out.v_es;
  out.expected_ratio = redistribution_factors(medium).radiative;
  return out;
}

double gauge_invariance_sum(double q, const Medium& medium, double z0,
                            const QuadratureSpec& spec) {
  const ShiftResult s = second_order_shift(q, medium, z0, spec);
  return s.delta_e + redistribution_factors(medium).coulomb * s.v_es;
}

double double_commutator_cnumber(double q, const Medium& medium, double z0,
                                 const QuadratureSpec& spec) {
  check_height(z0);
  spec.validate();
  const double n2 = medium.n2();
  const Eigen::Vector2d kvec(1.0, 0.0);

  // omega |chi_a(r0)|^2 for each mode at kpar along x.
  auto weight = [&](double kappa, cplx kz, Side side) {
    const SpectralPoint p{kappa * kvec, kz, side, Polarization::TM};
    const double w = mode_frequency(p);
    return w * std::norm(chi_mode_coefficient(medium, p, z0, false));
  };
  auto f = [&](double kappa) -> double {
    auto right = [&](double k) { return weight(kappa, cplx(k, 0.0), Side::Right); };
    auto left = [&](double k) {
      const double kzd = refracted_kz(medium, kappa, cplx(k, 0.0)).real();
      return n2 * k / kzd * weight(kappa, cplx(k, 0.0), Side::Left);
    };
    auto evanescent = [&](double t) {
      const double kzd = refracted_kz(medium, kappa, cplx(0.0, t)).real();
      if (!(kzd > 0.0)) return 0.0;
      return n2 * t / kzd * weight(kappa, cplx(0.0, t), Side::Left);
    };
    const auto r = spectral::halfline_integral(right, kappa, spec);
    const auto l = spectral::halfline_integral(left, kappa, spec);
    const auto e = spectral::cut_segment_integral(
        evanescent, evanescent_threshold(medium, kappa), spec);
    return kTwoPi * kappa * (r.value + l.value + e.value);
  };
  const auto r = spectral::truncated_radial_integral(f, 2.0 * z0, 0.0, spec);
  if (!r.converged) {
    throw NonConvergenceError("double commutator quadrature did not converge");
  }
  return q * q * r.value;
}

}  // namespace hsqed
