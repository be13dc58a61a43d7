#include <doctest.h>

#include <cmath>
#include <limits>

#include "hsqed/errors.hpp"
#include "hsqed/medium.hpp"
#include "support.hpp"

using namespace hsqed;

TEST_CASE("medium rejects indices below one") {
  CHECK_THROWS_AS(Medium(0.5), DomainError);
  CHECK_THROWS_AS(Medium(std::nan("")), DomainError);
  CHECK_THROWS_AS(Medium(std::numeric_limits<double>::infinity()), DomainError);
  CHECK_NOTHROW(Medium(1.0));
}

TEST_CASE("permittivity profile") {
  const Medium m(2.0);
  CHECK(epsilon_profile(m, 1.0) == 1.0);
  CHECK(epsilon_profile(m, -1.0) == 4.0);
  CHECK(epsilon_profile(m, 0.0) == 2.5);
}

TEST_CASE("image and transmission strengths") {
  const Medium m(std::sqrt(3.0));
  CHECK(m.image_strength() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.transmission_strength() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Medium(1.0).image_strength() == 0.0);
}

TEST_CASE("refracted kz examples") {
  CHECK(refracted_kz(Medium(2.0), 0.0, 1.0) == cplx(2.0, 0.0));
  const double r2 = std::sqrt(2.0);
  CHECK(refracted_kz(Medium(r2), 1.0, cplx(0.0, 1.0 / r2)) == cplx(0.0, 0.0));
}

TEST_CASE("refracted kz is the identity without an interface") {
  testing::Rng rng(11);
  const Medium vac(1.0);
  for (int i = 0; i < 200; ++i) {
    const double kp = rng.uniform(0.0, 5.0);
    const cplx kz(rng.uniform(-5.0, 5.0), i % 2 ? rng.uniform(0.0, 3.0) : 0.0);
    CHECK(refracted_kz(vac, kp, kz) == kz);
  }
}

TEST_CASE("refraction law on the travelling branch") {
  testing::Rng rng(12);
  for (int i = 0; i < 500; ++i) {
    const Medium m(rng.uniform(1.0, 6.0));
    const double kp = rng.uniform(0.0, 8.0);
    const double kz = rng.uniform(1e-3, 8.0);
    const cplx kzd = refracted_kz(m, kp, kz);
    CHECK(kzd.imag() == 0.0);
    CHECK(kzd.real() >= m.index() * kz * (1.0 - 1e-15));
    const double lhs = kzd.real() * kzd.real() - m.n2() * kz * kz;
    const double rhs = (m.n2() - 1.0) * kp * kp;
    CHECK(std::abs(lhs - rhs) <= 1e-14 * (m.n2() * kz * kz + rhs + 1.0));
    // Negative kz refracts into a wave travelling the same way.
    CHECK(refracted_kz(m, kp, -kz) == -kzd);
  }
}

TEST_CASE("evanescent segment maps to real refracted kz") {
  testing::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const Medium m(rng.uniform(1.05, 6.0));
    const double kp = rng.uniform(0.05, 8.0);
    const double gamma = evanescent_threshold(m, kp);
    const double t = gamma * rng.uniform(0.0, 1.0);
    const cplx kzd = refracted_kz(m, kp, cplx(0.0, t));
    CHECK(kzd.imag() == 0.0);
    CHECK(kzd.real() >= 0.0);
    const double expected = m.index() * std::sqrt((gamma - t) * (gamma + t));
    CHECK(kzd.real() == doctest::Approx(expected).epsilon(1e-12));
  }
  // Continuous approach to the branch point.
  const Medium m(2.0);
  const double gamma = evanescent_threshold(m, 1.0);
  const double near = refracted_kz(m, 1.0, cplx(0.0, gamma * (1.0 - 1e-10))).real();
  CHECK(near < 1e-4);
  CHECK(near > 0.0);
}

TEST_CASE("evanescent threshold") {
  CHECK(evanescent_threshold(Medium(std::sqrt(2.0)), 1.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(evanescent_threshold(Medium(1.0), 3.0) == 0.0);
  const double big = evanescent_threshold(Medium(1e6), 1.0);
  CHECK(std::abs(big - 1.0) < 1e-11);
}

TEST_CASE("mode frequency") {
  CHECK(mode_frequency({{0.0, 0.0}, 1.0, Side::Right, Polarization::TM}) == 1.0);
  CHECK(mode_frequency({{1.0, 0.0}, cplx(0.0, 0.5), Side::Left, Polarization::TM}) ==
        doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  // n = 2, kpar = 0, kzd = 2 is labelled by kz = 1.
  CHECK(mode_frequency({{0.0, 0.0}, 1.0, Side::Left, Polarization::TE}) == 1.0);
  CHECK_THROWS_AS(
      mode_frequency({{1.0, 0.0}, cplx(0.0, 2.0), Side::Left, Polarization::TM}),
      DomainError);
}

TEST_CASE("frequency matches across the interface") {
  testing::Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    const Medium m(rng.uniform(1.0, 5.0));
    const double kx = rng.uniform(-3.0, 3.0);
    const double ky = rng.uniform(-3.0, 3.0);
    const double kz = rng.uniform(0.01, 4.0);
    const double kp = std::hypot(kx, ky);
    const double kzd = refracted_kz(m, kp, kz).real();
    const double inside = std::sqrt(kp * kp + kzd * kzd) / m.index();
    CHECK(mode_frequency({{kx, ky}, kz, Side::Left, Polarization::TM}) ==
          doctest::Approx(inside).epsilon(1e-14));
  }
}
