#include "hsqed/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hsqed/errors.hpp"
#include "hsqed/modes.hpp"

namespace hsqed {
namespace {

using spectral::IntegralResult;
using spectral::QuadratureSpec;

constexpr double kPi = std::numbers::pi;
const double kTwoPiCubed = std::pow(2.0 * kPi, 3);
const cplx kI{0.0, 1.0};

// TE block in columns 0..2, TM block in columns 3..5.
using PolPair = Eigen::Matrix<cplx, 3, 6>;
// Five Bessel channels per polarization.
using Channels = Eigen::Matrix<cplx, 10, 1>;

const double kModeNorm = std::pow(2.0 * kPi, -1.5);

void accumulate(PolPair& acc, int block, const Vector3c& a, const Vector3c& b,
                double weight) {
  acc.block<3, 3>(0, 3 * block) += weight * (a * b.adjoint());
}

// Profiles at r_par = 0 of the right- and left-incident modes with kpar along
// x, evaluated at z and at the source height z' > 0. Index 0 is TE, 1 is TM.
// Equivalent to evaluate_profile(mode_structure(...)) but shares the
// exponentials and Fresnel factors between polarizations and sides.
struct FrameProfiles {
  std::array<Vector3c, 2> right_z, right_zp, left_z, left_zp;
  cplx kzd;
};

FrameProfiles frame_profiles(const Medium& medium, double kappa, cplx kz,
                             double z, double zp) {
  FrameProfiles p;
  const double n = medium.index();
  const cplx kzd = refracted_kz(medium, kappa, kz);
  p.kzd = kzd;
  // Inverse TM norms sqrt(kpar^2 + q^2): omega in vacuum, n omega inside.
  const cplx inv_w = 1.0 / std::sqrt(kappa * kappa + kz * kz);
  const cplx inv_wd = inv_w / n;
  const cplx up_zp = std::exp(kI * kz * zp);
  const cplx dn_zp = std::exp(-kI * kz * zp);
  const bool vacuum = z >= 0.0;
  const cplx q = vacuum ? kz : kzd;
  const cplx up_z = std::exp(kI * q * z);
  const cplx dn_z = std::exp(-kI * q * z);
  const double ar = kModeNorm;
  const double al = kModeNorm / n;

  for (int pol = 0; pol < 2; ++pol) {
    const bool te = pol == 0;
    const FresnelSet f = fresnel_coefficients(
        medium, te ? Polarization::TE : Polarization::TM, kz, kzd);
    auto e = [&](cplx qq, cplx inv_norm) -> Vector3c {
      if (te) return Vector3c(0.0, -1.0, 0.0);
      return Vector3c(qq * inv_norm, 0.0, -kappa * inv_norm);
    };
    p.right_zp[pol] = ar * (e(-kz, inv_w) * dn_zp + f.r_right * e(kz, inv_w) * up_zp);
    p.left_zp[pol] = (al * f.t_left * up_zp) * e(kz, inv_w);
    if (vacuum) {
      p.right_z[pol] = ar * (e(-kz, inv_w) * dn_z + f.r_right * e(kz, inv_w) * up_z);
      p.left_z[pol] = (al * f.t_left * up_z) * e(kz, inv_w);
    } else {
      p.right_z[pol] = (ar * f.t_right * dn_z) * e(-kzd, inv_wd);
      p.left_z[pol] = al * (e(kzd, inv_wd) * up_z + f.r_left * e(-kzd, inv_wd) * dn_z);
    }
  }
  return p;
}

// Sum of right- and left-incident travelling mode products at vacuum kz = k.
PolPair travelling_products(const Medium& medium, double kappa, double k,
                            double z, double zp) {
  PolPair out = PolPair::Zero();
  const FrameProfiles p = frame_profiles(medium, kappa, cplx(k, 0.0), z, zp);
  const double measure = medium.n2() * k / p.kzd.real();
  for (int pol = 0; pol < 2; ++pol) {
    accumulate(out, pol, p.right_z[pol], p.right_zp[pol], 1.0);
    accumulate(out, pol, p.left_z[pol], p.left_zp[pol], measure);
  }
  return out;
}

// Left-incident modes with kz = i t on the evanescent segment.
PolPair evanescent_products(const Medium& medium, double kappa, double t,
                            double z, double zp) {
  PolPair out = PolPair::Zero();
  const FrameProfiles p = frame_profiles(medium, kappa, cplx(0.0, t), z, zp);
  const double kzd = p.kzd.real();
  if (!(kzd > 0.0)) return out;
  const double measure = medium.n2() * t / kzd;
  for (int pol = 0; pol < 2; ++pol) {
    accumulate(out, pol, p.left_z[pol], p.left_zp[pol], measure);
  }
  return out;
}

QuadratureSpec inner_spec(const QuadratureSpec& spec, double kappa) {
  QuadratureSpec s = spec;
  s.abs_tol = spec.abs_tol * std::max(1.0, kappa);
  return s;
}

// kz integral of the mode products for both polarizations, normalized
// (including the (2 pi)^-3 of the mode measure).
IntegralResult<PolPair> inner_products(const Medium& medium, double kappa,
                                       double z, double zp,
                                       const QuadratureSpec& spec) {
  const QuadratureSpec ispec = inner_spec(spec, kappa);
  const bool vacuum_side = z >= 0.0;
  const Medium vacuum(1.0);
  const double s = vacuum_side ? z + zp : zp - medium.index() * z;

  auto travelling = [&](double k) -> PolPair {
    PolPair v = travelling_products(medium, kappa, k, z, zp);
    if (vacuum_side) v -= travelling_products(vacuum, kappa, k, z, zp);
    return v;
  };
  auto trav = spectral::halfline_oscillatory_integral(travelling, s, ispec,
                                                      8.0 * kappa);
  const double gamma = evanescent_threshold(medium, kappa);
  auto evan = spectral::cut_segment_integral(
      [&](double t) { return evanescent_products(medium, kappa, t, z, zp); },
      gamma, ispec);

  IntegralResult<PolPair> out;
  out.value = trav.value + evan.value;
  out.error_estimate = trav.error_estimate + evan.error_estimate;
  out.nodes_used = trav.nodes_used + evan.nodes_used;
  out.converged = trav.converged && evan.converged;
  return out;
}

void check_kpar(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kpar must be positive and finite");
  }
}

void check_heights(double z, double zp) {
  if (!std::isfinite(z)) throw DomainError("z must be finite");
  if (!(zp > 0.0) || !std::isfinite(zp)) {
    throw DomainError("source height z' must be positive");
  }
}

// Bessel channels of one k-frame spectral tensor (normalized) at kpar,
// written into rows 5 block .. 5 block + 4 of the column c.
template <class Column>
void fill_channels(Column&& c, int block, const KernelTensor& s, double kappa,
                   double rho) {
  const double x = kappa * rho;
  const double j0 = std::cyl_bessel_j(0.0, x);
  const double j1 = std::cyl_bessel_j(1.0, x);
  const double j2 = std::cyl_bessel_j(2.0, x);
  const int b = 5 * block;
  c(b + 0) = kappa * (s(0, 0) + s(1, 1)) * j0;
  c(b + 1) = kappa * (s(0, 0) - s(1, 1)) * j2;
  c(b + 2) = kappa * s(0, 2) * j1;
  c(b + 3) = kappa * s(2, 0) * j1;
  c(b + 4) = kappa * s(2, 2) * j0;
}

// Position-space tensor from the integrated channels of one block.
template <class Column>
KernelTensor from_channels(const Column& c, int block,
                           const Eigen::Vector2d& rho_hat) {
  const int b = 5 * block;
  const double cb = rho_hat.x();
  const double sb = rho_hat.y();
  Eigen::Matrix2d m;
  m << cb * cb - sb * sb, 2.0 * cb * sb, 2.0 * cb * sb, sb * sb - cb * cb;
  KernelTensor k = KernelTensor::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int bb = 0; bb < 2; ++bb) {
      k(a, bb) = kPi * c(b + 0) * (a == bb ? 1.0 : 0.0) - kPi * c(b + 1) * m(a, bb);
    }
    k(a, 2) = 2.0 * kPi * kI * c(b + 2) * rho_hat(a);
    k(2, a) = 2.0 * kPi * kI * c(b + 3) * rho_hat(a);
  }
  k(2, 2) = 2.0 * kPi * c(b + 4);
  return k;
}

struct Geometry {
  double z;
  double zp;
  double rho;
  Eigen::Vector2d rho_hat;
  double damping;
};

Geometry geometry_of(const PointPair& pair) {
  validate_pair(pair);
  Geometry g;
  g.z = pair.r.z();
  g.zp = pair.rprime.z();
  const Eigen::Vector2d d(pair.r.x() - pair.rprime.x(),
                          pair.r.y() - pair.rprime.y());
  g.rho = d.norm();
  g.rho_hat = g.rho > 0.0 ? Eigen::Vector2d(d / g.rho) : Eigen::Vector2d(1.0, 0.0);
  g.damping = std::abs(g.z) + g.zp;
  return g;
}

// Channel columns of several geometries integrated together.
using ChannelBatch = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

// Radial integral of channel-valued spectra, one column per geometry. The
// spectrum reports the error estimate of its channels; the largest one over
// the range bounds the accumulated inner error and acts as the noise floor
// of the outer rule. The slowest damping and widest separation of the batch
// set the truncation and the panel layout.
template <class Spectrum>
IntegralResult<ChannelBatch> radial_channels(Spectrum&& spectrum, int rows,
                                             const std::vector<Geometry>& gs,
                                             const QuadratureSpec& spec) {
  double damping = gs.front().damping;
  double rho = 0.0;
  for (const Geometry& g : gs) {
    damping = std::min(damping, g.damping);
    rho = std::max(rho, g.rho);
  }
  const double kmax = spec.damped_truncation_decades * std::log(10.0) / damping;
  const auto cols = static_cast<Eigen::Index>(gs.size());
  double floor = 0.0;
  auto f = [&](double kappa) -> ChannelBatch {
    ChannelBatch c = ChannelBatch::Zero(rows, cols);
    double err = 0.0;
    spectrum(kappa, c, err);
    floor = std::max(floor, kmax * err);
    return c;
  };
  return spectral::truncated_radial_integral(f, damping, rho, spec, &floor);
}

// Scattered parts at geometries sharing z and z'; the inner integrals are
// evaluated once per kpar.
struct ScatteredBatch {
  std::vector<KernelTensor> te;
  std::vector<KernelTensor> tm;
  double error_estimate = 0.0;
  bool converged = false;
};

ScatteredBatch scattered_batch(const Medium& medium,
                               const std::vector<Geometry>& gs,
                               const QuadratureSpec& spec) {
  const double z = gs.front().z;
  const double zp = gs.front().zp;
  auto spectrum = [&](double kappa, ChannelBatch& c, double& err) {
    const auto r = inner_products(medium, kappa, z, zp, spec);
    for (std::size_t k = 0; k < gs.size(); ++k) {
      const auto col = static_cast<Eigen::Index>(k);
      fill_channels(c.col(col), 0, r.value.block<3, 3>(0, 0), kappa, gs[k].rho);
      fill_channels(c.col(col), 1, r.value.block<3, 3>(0, 3), kappa, gs[k].rho);
    }
    err = kappa * r.error_estimate;
  };
  const auto r = radial_channels(spectrum, 10, gs, spec);
  ScatteredBatch out;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const auto col = r.value.col(static_cast<Eigen::Index>(k));
    out.te.push_back(from_channels(col, 0, gs[k].rho_hat));
    out.tm.push_back(from_channels(col, 1, gs[k].rho_hat));
  }
  out.error_estimate = 2.0 * kPi * r.error_estimate;
  out.converged = r.converged;
  return out;
}

// Gauge-difference kernels at geometries sharing z'. The chi integrals do
// not depend on z, which enters through an explicit decay factor.
std::vector<KernelResult> gauge_difference_batch(const Medium& medium,
                                                 const std::vector<Geometry>& gs,
                                                 const QuadratureSpec& spec) {
  const double zp = gs.front().zp;
  auto spectrum = [&](double kappa, ChannelBatch& c, double& err) {
    const auto r = chi_field_integrals(medium, kappa, zp, spec);
    for (std::size_t k = 0; k < gs.size(); ++k) {
      const double sgn = gs[k].z >= 0.0 ? 1.0 : -1.0;
      const double decay = std::exp(-kappa * std::abs(gs[k].z));
      const Eigen::Vector3cd d(kI * kappa * decay, 0.0, -sgn * kappa * decay);
      KernelTensor s = KernelTensor::Zero();
      for (int i : {0, 2}) {
        s(i, 0) = d(i) * r.value(0);
        s(i, 2) = d(i) * r.value(1);
      }
      fill_channels(c.col(static_cast<Eigen::Index>(k)), 0, s, kappa, gs[k].rho);
    }
    err = kappa * kappa * r.error_estimate;
  };
  const auto r = radial_channels(spectrum, 5, gs, spec);
  std::vector<KernelResult> out;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    KernelResult kr;
    kr.value = from_channels(r.value.col(static_cast<Eigen::Index>(k)), 0,
                             gs[k].rho_hat);
    kr.error_estimate = 2.0 * kPi * r.error_estimate;
    kr.converged = r.converged;
    out.push_back(kr);
  }
  return out;
}

}  // namespace

const char* to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::GeneralizedDelta: return "GeneralizedDelta";
    case KernelKind::GaugeDifference: return "GaugeDifference";
    case KernelKind::TrueCoulomb: return "TrueCoulomb";
    case KernelKind::PerfectReflector: return "PerfectReflector";
  }
  return "?";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  for (KernelKind k : {KernelKind::GeneralizedDelta, KernelKind::GaugeDifference,
                       KernelKind::TrueCoulomb, KernelKind::PerfectReflector}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown kernel kind '" + name + "'");
}

IntegralResult<KernelTensor> kz_spectral_tensor(const Medium& medium,
                                                Polarization pol, double kpar,
                                                double z, double zprime,
                                                const QuadratureSpec& spec) {
  check_kpar(kpar);
  check_heights(z, zprime);
  const auto r = inner_products(medium, kpar, z, zprime, spec);
  const int col = pol == Polarization::TE ? 0 : 3;
  IntegralResult<KernelTensor> out;
  out.value = kTwoPiCubed * r.value.block<3, 3>(0, col);
  out.error_estimate = kTwoPiCubed * r.error_estimate;
  out.nodes_used = r.nodes_used;
  out.converged = r.converged;
  return out;
}

cplx kz_spectral_kernel(const Medium& medium, Polarization pol, int i, int j,
                        double kpar, double z, double zprime,
                        const QuadratureSpec& spec) {
  if (i < 0 || i > 2 || j < 0 || j > 2) {
    throw std::out_of_range("tensor index out of range");
  }
  const auto r = kz_spectral_tensor(medium, pol, kpar, z, zprime, spec);
  if (!r.converged) {
    throw NonConvergenceError("kz spectral integral did not converge");
  }
  return r.value(i, j);
}

KernelTensor residue_closed_form_tensor(const Medium& medium, double kpar,
                                        double z, double zprime) {
  check_kpar(kpar);
  check_heights(z, zprime);
  KernelTensor t = KernelTensor::Zero();
  if (z >= 0.0) {
    const double a = kPi * medium.image_strength() * kpar *
                     std::exp(-kpar * (z + zprime));
    t(0, 0) = a;
    t(2, 2) = a;
    t(0, 2) = -kI * a;
    t(2, 0) = kI * a;
  } else {
    const double b = kPi * medium.transmission_strength() * kpar *
                     std::exp(-kpar * (zprime - z));
    t(0, 0) = -b;
    t(2, 2) = b;
    t(0, 2) = kI * b;
    t(2, 0) = kI * b;
  }
  return t;
}

cplx residue_closed_form(const Medium& medium, int i, int j, double kpar,
                         double z, double zprime) {
  if (i < 0 || i > 2 || j < 0 || j > 2) {
    throw std::out_of_range("tensor index out of range");
  }
  return residue_closed_form_tensor(medium, kpar, z, zprime)(i, j);
}

spectral::IntegralResult<Eigen::Vector2cd> chi_field_integrals(
    const Medium& medium, double kpar, double zprime,
    const QuadratureSpec& spec) {
  check_kpar(kpar);
  check_heights(0.0, zprime);
  const QuadratureSpec ispec = inner_spec(spec, kpar);
  const double n2 = medium.n2();
  const Eigen::Vector2d kvec(kpar, 0.0);

  auto project = [&](const ModeStructure& m, cplx weight) -> Eigen::Vector2cd {
    const Vector3c f = evaluate_profile(m, zprime);
    return Eigen::Vector2cd(weight * std::conj(f.x()), weight * std::conj(f.z()));
  };
  auto travelling = [&](double k) -> Eigen::Vector2cd {
    const SpectralPoint right{kvec, cplx(k, 0.0), Side::Right, Polarization::TM};
    SpectralPoint left = right;
    left.side = Side::Left;
    const double w = mode_frequency(right);
    const ModeStructure mr = mode_structure(medium, right);
    const ModeStructure ml = mode_structure(medium, left);
    const cplx gr = surface_charge_mode(medium, Side::Right, kpar, right.kz);
    const cplx gl = surface_charge_mode(medium, Side::Left, kpar, left.kz);
    const double measure = n2 * k / ml.kzd.real();
    return project(mr, gr / w) + project(ml, measure * gl / w);
  };
  auto evanescent = [&](double t) -> Eigen::Vector2cd {
    const SpectralPoint left{kvec, cplx(0.0, t), Side::Left, Polarization::TM};
    const ModeStructure ml = mode_structure(medium, left);
    const double kzd = ml.kzd.real();
    if (!(kzd > 0.0)) return Eigen::Vector2cd::Zero();
    const double w = mode_frequency(left);
    const cplx gl = surface_charge_mode(medium, Side::Left, kpar, left.kz);
    return project(ml, (n2 * t / kzd) * gl / w);
  };

  auto trav = spectral::halfline_oscillatory_integral(travelling, zprime, ispec,
                                                      8.0 * kpar);
  auto evan = spectral::cut_segment_integral(
      evanescent, evanescent_threshold(medium, kpar), ispec);
  spectral::IntegralResult<Eigen::Vector2cd> out;
  out.value = trav.value + evan.value;
  out.error_estimate = trav.error_estimate + evan.error_estimate;
  out.nodes_used = trav.nodes_used + evan.nodes_used;
  out.converged = trav.converged && evan.converged;
  return out;
}

Eigen::Vector2cd chi_field_closed_form(const Medium& medium, double kpar,
                                       double zprime) {
  check_kpar(kpar);
  check_heights(0.0, zprime);
  const double a =
      kPi * medium.image_strength() * std::exp(-kpar * zprime) / kTwoPiCubed;
  return Eigen::Vector2cd(-kI * a, cplx(-a, 0.0));
}

KernelTensor gauge_difference_closed_form(const Medium& medium,
                                          const PointPair& pair) {
  validate_pair(pair);
  if (pair.r.z() >= 0.0) {
    return (-grad_grad_green_tensor(medium, GreenVariant::Reflected, pair))
        .cast<cplx>();
  }
  return (medium.image_strength() *
          grad_grad_green_tensor(medium, GreenVariant::Free, pair))
      .cast<cplx>();
}

KernelTensor closed_form_kernel(const Medium& medium, KernelKind kind,
                                const PointPair& pair) {
  switch (kind) {
    case KernelKind::GeneralizedDelta:
      return (-grad_grad_green_tensor(medium, GreenVariant::Full, pair))
          .cast<cplx>();
    case KernelKind::GaugeDifference:
      return gauge_difference_closed_form(medium, pair);
    case KernelKind::TrueCoulomb:
      return (-grad_grad_green_tensor(medium, GreenVariant::Free, pair))
          .cast<cplx>();
    case KernelKind::PerfectReflector:
      if (pair.r.z() < 0.0) {
        throw DomainError("perfect-reflector kernel is defined for z >= 0");
      }
      return (-grad_grad_green_tensor(medium, GreenVariant::Free, pair) +
              image_grad_grad(pair))
          .cast<cplx>();
  }
  return KernelTensor::Zero();
}

ScatteredKernel scattered_kernel(const Medium& medium, const PointPair& pair,
                                 const QuadratureSpec& spec) {
  const ScatteredBatch b = scattered_batch(medium, {geometry_of(pair)}, spec);
  ScatteredKernel out;
  out.te = b.te.front();
  out.tm = b.tm.front();
  out.error_estimate = b.error_estimate;
  out.converged = b.converged;
  return out;
}

namespace {

// Indices of pairs grouped by equal values of key(pair), in first-seen order.
template <class Key>
std::vector<std::vector<std::size_t>> group_by(const std::vector<PointPair>& pairs,
                                               Key&& key) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<decltype(key(pairs.front()))> keys;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto k = key(pairs[i]);
    const auto it = std::find(keys.begin(), keys.end(), k);
    if (it == keys.end()) {
      keys.push_back(k);
      groups.push_back({i});
    } else {
      groups[static_cast<std::size_t>(it - keys.begin())].push_back(i);
    }
  }
  return groups;
}

std::vector<KernelResult> generalized_delta_many(const Medium& medium,
                                                 const std::vector<PointPair>& pairs,
                                                 const QuadratureSpec& spec) {
  std::vector<KernelResult> out(pairs.size());
  const auto groups = group_by(pairs, [](const PointPair& p) {
    return std::pair{p.r.z(), p.rprime.z()};
  });
  for (const auto& group : groups) {
    std::vector<Geometry> gs;
    for (std::size_t i : group) gs.push_back(geometry_of(pairs[i]));
    const ScatteredBatch b = scattered_batch(medium, gs, spec);
    for (std::size_t k = 0; k < group.size(); ++k) {
      const PointPair& pair = pairs[group[k]];
      KernelResult& r = out[group[k]];
      r.value = b.te[k] + b.tm[k];
      if (pair.r.z() >= 0.0) {
        r.value -=
            grad_grad_green_tensor(medium, GreenVariant::Free, pair).cast<cplx>();
      }
      r.error_estimate = b.error_estimate;
      r.converged = b.converged;
    }
  }
  return out;
}

std::vector<KernelResult> gauge_difference_many(const Medium& medium,
                                                const std::vector<PointPair>& pairs,
                                                const QuadratureSpec& spec) {
  std::vector<KernelResult> out(pairs.size());
  const auto groups =
      group_by(pairs, [](const PointPair& p) { return p.rprime.z(); });
  for (const auto& group : groups) {
    std::vector<Geometry> gs;
    for (std::size_t i : group) gs.push_back(geometry_of(pairs[i]));
    const auto b = gauge_difference_batch(medium, gs, spec);
    for (std::size_t k = 0; k < group.size(); ++k) out[group[k]] = b[k];
  }
  return out;
}

}  // namespace

std::vector<KernelResult> assemble_kernels(const Medium& medium, KernelKind kind,
                                           const std::vector<PointPair>& pairs,
                                           const QuadratureSpec& spec) {
  spec.validate();
  for (const PointPair& p : pairs) validate_pair(p);
  if (pairs.empty()) return {};
  std::vector<KernelResult> out;
  switch (kind) {
    case KernelKind::GeneralizedDelta:
      out = generalized_delta_many(medium, pairs, spec);
      break;
    case KernelKind::GaugeDifference:
      out = gauge_difference_many(medium, pairs, spec);
      break;
    case KernelKind::TrueCoulomb: {
      out = generalized_delta_many(medium, pairs, spec);
      const auto x = gauge_difference_many(medium, pairs, spec);
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].value -= x[i].value;
        out[i].error_estimate += x[i].error_estimate;
        out[i].converged = out[i].converged && x[i].converged;
      }
      break;
    }
    case KernelKind::PerfectReflector:
      for (const PointPair& p : pairs) {
        KernelResult r;
        r.value = closed_form_kernel(medium, kind, p);
        r.converged = true;
        out.push_back(r);
      }
      return out;
  }
  for (const KernelResult& r : out) {
    if (!r.converged) {
      throw NonConvergenceError(std::string(to_string(kind)) +
                                " kernel: radial quadrature error estimate " +
                                std::to_string(r.error_estimate) +
                                " exceeds tolerance");
    }
  }
  return out;
}

KernelResult assemble_kernel(const Medium& medium, KernelKind kind,
                             const PointPair& pair, const QuadratureSpec& spec) {
  return assemble_kernels(medium, kind, {pair}, spec).front();
}

double singular_distance(const PointPair& pair) {
  validate_pair(pair);
  Eigen::Vector3d src = pair.rprime;
  if (pair.r.z() >= 0.0) src.z() = -src.z();
  return (pair.r - src).norm();
}

namespace {

void check_stencil(const PointPair& pair, double h) {
  validate_pair(pair);
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  if (std::abs(pair.r.z()) <= 2.0 * h) {
    throw DomainError("finite-difference stencil crosses the interface");
  }
}

// Stencil points for fourth-order central differences along each axis,
// followed by r itself.
std::vector<PointPair> stencil_points(const PointPair& pair, double h) {
  std::vector<PointPair> pts;
  for (int b = 0; b < 3; ++b) {
    for (double off : {2.0 * h, h, -h, -2.0 * h}) {
      PointPair p = pair;
      p.r(b) += off;
      pts.push_back(p);
    }
  }
  pts.push_back(pair);
  return pts;
}

// Curl from tensors sampled at stencil_points; result(a, j) = eps_abc d_b K_cj.
KernelTensor stencil_curl(const std::vector<KernelTensor>& v, double h) {
  constexpr std::array<double, 4> weights{-1.0, 8.0, -8.0, 1.0};
  std::array<KernelTensor, 3> d;
  for (int b = 0; b < 3; ++b) {
    d[b].setZero();
    for (std::size_t s = 0; s < 4; ++s) {
      d[b] += weights[s] * v[static_cast<std::size_t>(4 * b) + s];
    }
    d[b] /= 12.0 * h;
  }
  KernelTensor c;
  for (int j = 0; j < 3; ++j) {
    c(0, j) = d[1](2, j) - d[2](1, j);
    c(1, j) = d[2](0, j) - d[0](2, j);
    c(2, j) = d[0](1, j) - d[1](0, j);
  }
  return c;
}

std::vector<KernelTensor> values_of(const std::vector<KernelResult>& rs) {
  std::vector<KernelTensor> v;
  for (const KernelResult& r : rs) v.push_back(r.value);
  return v;
}

}  // namespace

KernelTensor kernel_curl(const Medium& medium, KernelKind kind,
                         const PointPair& pair, double h,
                         const QuadratureSpec& spec) {
  check_stencil(pair, h);
  const auto pts = stencil_points(pair, h);
  return stencil_curl(values_of(assemble_kernels(medium, kind, pts, spec)), h);
}

CurlSet kernel_curls(const Medium& medium, const PointPair& pair, double h,
                     const QuadratureSpec& spec) {
  check_stencil(pair, h);
  const auto pts = stencil_points(pair, h);
  const auto gd = values_of(
      assemble_kernels(medium, KernelKind::GeneralizedDelta, pts, spec));
  const auto x = values_of(
      assemble_kernels(medium, KernelKind::GaugeDifference, pts, spec));
  std::vector<KernelTensor> tc;
  for (const PointPair& p : pts) {
    tc.push_back(closed_form_kernel(medium, KernelKind::TrueCoulomb, p));
  }
  CurlSet out;
  out.generalized_delta = stencil_curl(gd, h);
  out.gauge_difference = stencil_curl(x, h);
  out.true_coulomb = stencil_curl(tc, h);
  out.gd_value = gd.back();
  out.gauge_value = x.back();
  out.true_coulomb_value = tc.back();
  return out;
}

double curl_annihilation_residual(const Medium& medium, const PointPair& pair,
                                  double fd_step, const QuadratureSpec& spec) {
  const double len = singular_distance(pair);
  const double h = fd_step > 0.0 ? fd_step : 1e-3 * len;
  check_stencil(pair, h);
  const auto x = values_of(assemble_kernels(
      medium, KernelKind::GaugeDifference, stencil_points(pair, h), spec));
  const double curl = stencil_curl(x, h).cwiseAbs().maxCoeff() * len;
  const double scale = x.back().cwiseAbs().maxCoeff();
  return scale == 0.0 ? curl : curl / scale;
}

double poisson_jump_residual(const Medium& medium, double kpar, cplx kz,
                             Side side) {
  check_kpar(kpar);
  const SpectralPoint point{Eigen::Vector2d(kpar, 0.0), kz, side,
                            Polarization::TM};
  const cplx lhs = 2.0 * kpar * chi_mode_coefficient(medium, point, 0.0, true) /
                   kNaturalUnits.eps0;
  const cplx rhs =
      surface_charge_from_field_jump(medium, point) / kNaturalUnits.eps0;
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

std::vector<double> perfect_reflector_convergence(
    const PointPair& pair, const std::vector<double>& n_values,
    const QuadratureSpec& spec) {
  std::vector<double> out;
  out.reserve(n_values.size());
  for (double n : n_values) {
    const Medium m(n);
    const KernelTensor gd =
        assemble_kernel(m, KernelKind::GeneralizedDelta, pair, spec).value;
    const KernelTensor pr =
        closed_form_kernel(m, KernelKind::PerfectReflector, pair);
    out.push_back((gd - pr).cwiseAbs().maxCoeff());
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("log-log fit needs positive data");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double tensor_relative_error(const KernelTensor& a, const KernelTensor& b) {
  const double diff = (a - b).cwiseAbs().maxCoeff();
  const double scale = b.cwiseAbs().maxCoeff();
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace hsqed
