#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "hsqed/greens.hpp"
#include "hsqed/medium.hpp"
#include "hsqed/spectral.hpp"

namespace hsqed {

using KernelTensor = Eigen::Matrix3cd;

// Equal-time commutator kernels between E_i(r) and A_j(r'), in units of
// -i hbar / eps0. All four are real tensors.
//   GeneralizedDelta  mode-sum completeness kernel of the full field
//   GaugeDifference   part carried by the longitudinal potential chi
//   TrueCoulomb       GeneralizedDelta - GaugeDifference
//   PerfectReflector  n -> infinity limit, z > 0 only
enum class KernelKind { GeneralizedDelta, GaugeDifference, TrueCoulomb,
                        PerfectReflector };

const char* to_string(KernelKind kind);
KernelKind kernel_kind_from_string(const std::string& name);

struct KernelResult {
  KernelTensor value = KernelTensor::Zero();
  double error_estimate = 0.0;
  bool converged = true;
};

// Integral over the normal wavenumber of the mode products for fixed kpar
// along x, for one polarization: all of sum_modes f_i(z) f_j(z')^*, reflected
// part only for z >= 0, complete for z < 0. Normalization (2 pi)^3 is removed,
// so the result is comparable to residue_closed_form. Component indices refer
// to the frame with kpar along x.
spectral::IntegralResult<KernelTensor> kz_spectral_tensor(
    const Medium& medium, Polarization pol, double kpar, double z,
    double zprime, const spectral::QuadratureSpec& spec);

// One component of kz_spectral_tensor. Throws NonConvergenceError.
cplx kz_spectral_kernel(const Medium& medium, Polarization pol, int i, int j,
                        double kpar, double z, double zprime,
                        const spectral::QuadratureSpec& spec);

// Closed form of the same integral from the residue at the interface pole.
// TE contributions vanish identically.
KernelTensor residue_closed_form_tensor(const Medium& medium, double kpar,
                                        double z, double zprime);
cplx residue_closed_form(const Medium& medium, int i, int j, double kpar,
                         double z, double zprime);

// Analytic expression for each kind:
//   GeneralizedDelta  -grad grad' G (Full)
//   GaugeDifference   gauge_difference_closed_form
//   TrueCoulomb       -grad grad' G0
//   PerfectReflector  -grad grad' [G0(r - r') - G0(r - image(r'))]
KernelTensor closed_form_kernel(const Medium& medium, KernelKind kind,
                                const PointPair& pair);

// -grad grad' G^R for z >= 0 and +alpha grad grad' G0 for z < 0.
KernelTensor gauge_difference_closed_form(const Medium& medium,
                                          const PointPair& pair);

// Kernel from the mode sums. The vacuum free part of GeneralizedDelta is the
// analytic -grad grad' G0; everything else is quadrature. PerfectReflector is
// the analytic limit and throws DomainError for z < 0. Throws
// NonConvergenceError when the radial quadrature misses its tolerance.
KernelResult assemble_kernel(const Medium& medium, KernelKind kind,
                             const PointPair& pair,
                             const spectral::QuadratureSpec& spec);

// assemble_kernel at several pairs. Pairs sharing (z, z') share the inner
// integrals of GeneralizedDelta; pairs sharing z' share those of
// GaugeDifference.
std::vector<KernelResult> assemble_kernels(const Medium& medium, KernelKind kind,
                                           const std::vector<PointPair>& pairs,
                                           const spectral::QuadratureSpec& spec);

// Mode-sum part of GeneralizedDelta split by polarization: the reflected
// field for z >= 0, the full transmitted field for z < 0.
struct ScatteredKernel {
  KernelTensor te = KernelTensor::Zero();
  KernelTensor tm = KernelTensor::Zero();
  double error_estimate = 0.0;
  bool converged = true;
};
ScatteredKernel scattered_kernel(const Medium& medium, const PointPair& pair,
                                 const spectral::QuadratureSpec& spec);

// Spectral chi-field integrals I_x, I_z at kpar along x: the sum over TM
// modes of (g / omega) f_j(0, 0, z')^*, normalized as the kernels.
spectral::IntegralResult<Eigen::Vector2cd> chi_field_integrals(
    const Medium& medium, double kpar, double zprime,
    const spectral::QuadratureSpec& spec);
Eigen::Vector2cd chi_field_closed_form(const Medium& medium, double kpar,
                                       double zprime);

// Curl in r of the assembled kernel by a fourth-order central stencil with
// step h; result(a, j) = eps_abc d_b K_cj.
KernelTensor kernel_curl(const Medium& medium, KernelKind kind,
                         const PointPair& pair, double h,
                         const spectral::QuadratureSpec& spec);

// Curls on one stencil of the assembled GeneralizedDelta and GaugeDifference
// kernels and of the closed-form TrueCoulomb kernel -grad grad' G0, with the
// three kernels at r itself.
struct CurlSet {
  KernelTensor generalized_delta = KernelTensor::Zero();
  KernelTensor gauge_difference = KernelTensor::Zero();
  KernelTensor true_coulomb = KernelTensor::Zero();
  KernelTensor gd_value = KernelTensor::Zero();
  KernelTensor gauge_value = KernelTensor::Zero();
  KernelTensor true_coulomb_value = KernelTensor::Zero();
};
CurlSet kernel_curls(const Medium& medium, const PointPair& pair, double h,
                     const spectral::QuadratureSpec& spec);

// Distance from r to the singular point of the kernel at r: the image of r'
// for z > 0, r' itself for z < 0.
double singular_distance(const PointPair& pair);

// max |curl GaugeDifference| * L / max |GaugeDifference| with L the singular
// distance. fd_step <= 0 selects 1e-3 L.
double curl_annihilation_residual(const Medium& medium, const PointPair& pair,
                                  double fd_step,
                                  const spectral::QuadratureSpec& spec);

// Relative mismatch between 2 kpar chi_dot(z = 0) and the surface charge
// obtained from the field jump, for one TM mode.
double poisson_jump_residual(const Medium& medium, double kpar, cplx kz,
                             Side side);

// max |GeneralizedDelta(n) - PerfectReflector| at one pair for each n.
std::vector<double> perfect_reflector_convergence(
    const PointPair& pair, const std::vector<double>& n_values,
    const spectral::QuadratureSpec& spec);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// max |a - b| / max |b| over components; max |a - b| when b vanishes.
double tensor_relative_error(const KernelTensor& a, const KernelTensor& b);

}  // namespace hsqed
