#pragma once

#include <Eigen/Core>

#include "hsqed/medium.hpp"

namespace hsqed {

enum class GreenVariant { Free, Reflected, Transmitted, Full };

const char* to_string(GreenVariant variant);

// Field point r and source point r'. Sources must lie strictly in vacuum.
struct PointPair {
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  Eigen::Vector3d rprime = Eigen::Vector3d::UnitZ();
};

// Throws DomainError when z' <= 0 or a coordinate is not finite.
void validate_pair(const PointPair& pair);

// Electrostatic Green's function with a source in vacuum, solving
// -div(eps grad G) = delta(r - r') / eps0:
//   Free         1 / (4 pi |r - r'|)
//   Reflected    -alpha / (4 pi |r - image(r')|), defined for z >= 0
//   Transmitted  beta / (4 pi |r - r'|),           defined for z <= 0
//   Full         Free + Reflected for z >= 0, Transmitted for z < 0
// with alpha = (n^2 - 1)/(n^2 + 1) and beta = 2/(n^2 + 1).
double electrostatic_green(const Medium& medium, GreenVariant variant,
                           const PointPair& pair);

// Mixed second derivatives d/dr_i d/dr'_j of the selected variant.
Eigen::Matrix3d grad_grad_green_tensor(const Medium& medium,
                                       GreenVariant variant,
                                       const PointPair& pair);

// d/dr_i d/dr'_j of 1 / (4 pi |r - image(r')|), the unit-strength image term.
Eigen::Matrix3d image_grad_grad(const PointPair& pair);

// Classical image energy of a charge q at height z0:
// -(q^2 / 4 pi eps0) alpha / (4 z0).
double image_potential_ves(double q, const Medium& medium, double z0);

}  // namespace hsqed
