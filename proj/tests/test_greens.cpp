#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hsqed/errors.hpp"
#include "hsqed/greens.hpp"
#include "support.hpp"

using namespace hsqed;

namespace {

constexpr double kPi = std::numbers::pi;

PointPair random_pair(testing::Rng& rng, double zsign) {
  PointPair p;
  p.rprime = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.2, 1.5)};
  do {
    p.r = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
           zsign * rng.uniform(0.1, 1.5)};
  } while ((p.r - p.rprime).norm() < 0.3);
  return p;
}

GreenVariant side_variant(double z) {
  return z >= 0.0 ? GreenVariant::Reflected : GreenVariant::Transmitted;
}

}  // namespace

TEST_CASE("vacuum everywhere without an interface") {
  testing::Rng rng(41);
  const Medium vac(1.0);
  for (int i = 0; i < 50; ++i) {
    const PointPair p = random_pair(rng, i % 2 ? 1.0 : -1.0);
    const double g0 = 1.0 / (4.0 * kPi * (p.r - p.rprime).norm());
    CHECK(electrostatic_green(vac, GreenVariant::Full, p) ==
          doctest::Approx(g0).epsilon(1e-15));
  }
}

TEST_CASE("reflected Green's function at unit image distance") {
  const Medium m(std::sqrt(3.0));
  const PointPair p{{0.0, 0.0, 0.25}, {0.0, 0.0, 0.75}};
  CHECK(electrostatic_green(m, GreenVariant::Reflected, p) ==
        doctest::Approx(-0.5 / (4.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("branch restrictions and source validation") {
  const Medium m(2.0);
  CHECK_THROWS_AS(electrostatic_green(m, GreenVariant::Reflected,
                                      {{0, 0, -0.5}, {0, 0, 1}}),
                  DomainError);
  CHECK_THROWS_AS(electrostatic_green(m, GreenVariant::Transmitted,
                                      {{0, 0, 0.5}, {0, 0, 1}}),
                  DomainError);
  CHECK_THROWS_AS(validate_pair({{0, 0, 0.5}, {0, 0, 0.0}}), DomainError);
  CHECK_THROWS_AS(validate_pair({{0, 0, 0.5}, {0, 0, -1.0}}), DomainError);
}

TEST_CASE("matching across the interface") {
  testing::Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const Medium m(rng.uniform(1.0, 6.0));
    PointPair p = random_pair(rng, 1.0);
    p.r.z() = 0.0;
    const double expected =
        m.transmission_strength() / (4.0 * kPi * (p.r - p.rprime).norm());
    PointPair above = p, below = p;
    above.r.z() = 1e-300;
    below.r.z() = -1e-300;
    const double gu = electrostatic_green(m, GreenVariant::Full, above);
    const double gd = electrostatic_green(m, GreenVariant::Full, below);
    CHECK(std::abs(gu - expected) < 1e-12 * expected);
    CHECK(std::abs(gd - expected) < 1e-12 * expected);
    // eps dG/dz from one-sided fourth-order differences.
    const double h = 1e-4;
    auto g = [&](double z) {
      PointPair q = p;
      q.r.z() = z;
      return electrostatic_green(m, GreenVariant::Full, q);
    };
    auto one_sided = [&](double s) {
      return s * (-25.0 * g(s * 1e-300) + 48.0 * g(s * h) -
                  36.0 * g(2 * s * h) + 16.0 * g(3 * s * h) - 3.0 * g(4 * s * h)) /
             (12.0 * h);
    };
    const double d_up = one_sided(1.0);
    const double d_dn = one_sided(-1.0);
    CHECK(std::abs(d_up - m.n2() * d_dn) < 1e-8 * (std::abs(d_up) + 1.0 / (4 * kPi)));
  }
}

TEST_CASE("harmonic away from source and interface") {
  testing::Rng rng(43);
  for (int i = 0; i < 60; ++i) {
    const Medium m(rng.uniform(1.0, 5.0));
    const PointPair p = random_pair(rng, i % 2 ? 1.0 : -1.0);
    const double h = 1e-3;
    double lap = 0.0;
    const double g0 = electrostatic_green(m, GreenVariant::Full, p);
    for (int b = 0; b < 3; ++b) {
      auto g = [&](double off) {
        PointPair q = p;
        q.r(b) += off;
        return electrostatic_green(m, GreenVariant::Full, q);
      };
      lap += (-g(2 * h) + 16 * g(h) - 30 * g0 + 16 * g(-h) - g(-2 * h)) / (12 * h * h);
    }
    const double scale = std::abs(g0) / std::pow((p.r - p.rprime).norm(), 2);
    CHECK(std::abs(lap) < 1e-6 * scale);
  }
}

TEST_CASE("mixed second derivatives against finite differences") {
  testing::Rng rng(44);
  for (int i = 0; i < 60; ++i) {
    const Medium m(rng.uniform(1.0, 5.0));
    const double zs = i % 2 ? 1.0 : -1.0;
    const PointPair p = random_pair(rng, zs);
    for (GreenVariant v : {GreenVariant::Free, side_variant(zs), GreenVariant::Full}) {
      const Eigen::Matrix3d t = grad_grad_green_tensor(m, v, p);
      const double h = 1e-4;
      Eigen::Matrix3d fd;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          auto g = [&](double sa, double sb) {
            PointPair q = p;
            q.r(a) += sa * h;
            q.rprime(b) += sb * h;
            return electrostatic_green(m, v, q);
          };
          fd(a, b) = (g(1, 1) - g(1, -1) - g(-1, 1) + g(-1, -1)) / (4 * h * h);
        }
      }
      const double scale = t.cwiseAbs().maxCoeff();
      CHECK((t - fd).cwiseAbs().maxCoeff() < 1e-6 * scale);
    }
  }
}

TEST_CASE("free tensor is traceless and exchange symmetric") {
  testing::Rng rng(45);
  const Medium m(2.0);
  for (int i = 0; i < 100; ++i) {
    PointPair p = random_pair(rng, 1.0);
    const Eigen::Matrix3d t = grad_grad_green_tensor(m, GreenVariant::Free, p);
    CHECK(std::abs(t.trace()) < 1e-12 * t.cwiseAbs().maxCoeff());
    const PointPair swapped{p.rprime, p.r};
    const Eigen::Matrix3d u = grad_grad_green_tensor(m, GreenVariant::Free, swapped);
    CHECK((t - u.transpose()).cwiseAbs().maxCoeff() < 1e-14 * t.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("reflected zz component on the normal") {
  const Medium m(2.0);
  const double alpha = 3.0 / 5.0;
  const PointPair p{{0, 0, 0.4}, {0, 0, 0.7}};
  const double t = grad_grad_green_tensor(m, GreenVariant::Reflected, p)(2, 2);
  CHECK(std::abs(t) == doctest::Approx(2 * alpha / (4 * kPi * std::pow(1.1, 3))).epsilon(1e-14));
  // Sign: d/dz d/dz' of -alpha / (4 pi (z + z')) is -2 alpha / (4 pi (z + z')^3).
  CHECK(t < 0.0);
}

TEST_CASE("unit image term") {
  const PointPair p{{0.3, -0.2, 0.5}, {0.1, 0.4, 0.8}};
  const Medium m(3.0);
  const Eigen::Matrix3d refl = grad_grad_green_tensor(m, GreenVariant::Reflected, p);
  CHECK((refl + m.image_strength() * image_grad_grad(p)).cwiseAbs().maxCoeff() <
        1e-14 * refl.cwiseAbs().maxCoeff());
}

TEST_CASE("classical image energy") {
  CHECK(image_potential_ves(1.0, Medium(1.0), 1.0) == 0.0);
  CHECK(image_potential_ves(1.0, Medium(1e6), 1.0) ==
        doctest::Approx(-1.0 / (16 * kPi)).epsilon(1e-12));
  CHECK(image_potential_ves(1.0, Medium(std::sqrt(2.0)), 1.0) ==
        doctest::Approx(-1.0 / (48 * kPi)).epsilon(1e-14));
  testing::Rng rng(46);
  for (int i = 0; i < 50; ++i) {
    const Medium m(rng.uniform(1.0, 6.0));
    const double z0 = rng.uniform(0.1, 5.0);
    const double q = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(image_potential_ves(q, m, 2 * z0) -
                   image_potential_ves(q, m, z0) / 2) <=
          1e-14 * std::abs(image_potential_ves(q, m, z0)));
  }
}
