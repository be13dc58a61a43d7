#include "hsqed/greens.hpp"

#include <cmath>
#include <numbers>

#include "hsqed/errors.hpp"

namespace hsqed {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

Eigen::Vector3d image_of(const Eigen::Vector3d& p) {
  return {p.x(), p.y(), -p.z()};
}

double coulomb(const Eigen::Vector3d& d) {
  const double r = d.norm();
  if (r == 0.0) throw SingularityError("Green's function evaluated at source");
  return 1.0 / (kFourPi * r);
}

// d/dr_i d/dr'_j of 1/(4 pi |r - p(r')|), with p the identity (mirror = false)
// or the reflection z -> -z.
Eigen::Matrix3d coulomb_grad_grad(const Eigen::Vector3d& d, bool mirror) {
  const double r = d.norm();
  if (r == 0.0) throw SingularityError("Green's tensor evaluated at source");
  const double r3 = r * r * r;
  Eigen::Matrix3d t =
      (Eigen::Matrix3d::Identity() - 3.0 * d * d.transpose() / (r * r)) / r3;
  if (mirror) t.col(2) *= -1.0;
  return t / kFourPi;
}

bool on_vacuum_side(GreenVariant variant, double z) {
  return variant == GreenVariant::Full ? z >= 0.0 : true;
}

void check_region(GreenVariant variant, double z) {
  if (variant == GreenVariant::Reflected && z < 0.0) {
    throw DomainError("reflected Green's function is defined for z >= 0");
  }
  if (variant == GreenVariant::Transmitted && z > 0.0) {
    throw DomainError("transmitted Green's function is defined for z <= 0");
  }
}

}  // namespace

const char* to_string(GreenVariant variant) {
  switch (variant) {
    case GreenVariant::Free: return "Free";
    case GreenVariant::Reflected: return "Reflected";
    case GreenVariant::Transmitted: return "Transmitted";
    case GreenVariant::Full: return "Full";
  }
  return "?";
}

void validate_pair(const PointPair& pair) {
  if (!pair.r.allFinite() || !pair.rprime.allFinite()) {
    throw DomainError("point coordinates must be finite");
  }
  if (!(pair.rprime.z() > 0.0)) {
    throw DomainError("source point must lie in vacuum (z' > 0)");
  }
}

double electrostatic_green(const Medium& medium, GreenVariant variant,
                           const PointPair& pair) {
  validate_pair(pair);
  const double z = pair.r.z();
  check_region(variant, z);
  const Eigen::Vector3d d = pair.r - pair.rprime;
  const Eigen::Vector3d di = pair.r - image_of(pair.rprime);
  const double alpha = medium.image_strength();
  switch (variant) {
    case GreenVariant::Free:
      return coulomb(d);
    case GreenVariant::Reflected:
      return -alpha * coulomb(di);
    case GreenVariant::Transmitted:
      return medium.transmission_strength() * coulomb(d);
    case GreenVariant::Full:
      if (on_vacuum_side(variant, z)) return coulomb(d) - alpha * coulomb(di);
      return medium.transmission_strength() * coulomb(d);
  }
  return 0.0;
}

Eigen::Matrix3d grad_grad_green_tensor(const Medium& medium,
                                       GreenVariant variant,
                                       const PointPair& pair) {
  validate_pair(pair);
  const double z = pair.r.z();
  check_region(variant, z);
  const Eigen::Vector3d d = pair.r - pair.rprime;
  const Eigen::Vector3d di = pair.r - image_of(pair.rprime);
  const double alpha = medium.image_strength();
  switch (variant) {
    case GreenVariant::Free:
      return coulomb_grad_grad(d, false);
    case GreenVariant::Reflected:
      return -alpha * coulomb_grad_grad(di, true);
    case GreenVariant::Transmitted:
      return medium.transmission_strength() * coulomb_grad_grad(d, false);
    case GreenVariant::Full:
      if (on_vacuum_side(variant, z)) {
        return coulomb_grad_grad(d, false) - alpha * coulomb_grad_grad(di, true);
      }
      return medium.transmission_strength() * coulomb_grad_grad(d, false);
  }
  return Eigen::Matrix3d::Zero();
}

Eigen::Matrix3d image_grad_grad(const PointPair& pair) {
  validate_pair(pair);
  return coulomb_grad_grad(pair.r - image_of(pair.rprime), true);
}

double image_potential_ves(double q, const Medium& medium, double z0) {
  if (!(z0 > 0.0)) throw DomainError("charge height must be positive");
  return -(q * q / (kFourPi * kNaturalUnits.eps0)) * medium.image_strength() /
         (4.0 * z0);
}

}  // namespace hsqed
