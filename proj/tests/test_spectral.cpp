#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hsqed/spectral.hpp"

using namespace hsqed::spectral;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.abs_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = QuadratureSpec{};
  s.max_oscillation_periods = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = QuadratureSpec{};
  s.damped_truncation_decades = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("finite interval") {
  const QuadratureSpec spec;
  const auto r = finite_integral([](double x) { return std::exp(x); }, 0.0, 1.0, spec);
  CHECK(r.converged);
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-14);
}

TEST_CASE("oscillatory half line") {
  const QuadratureSpec spec;
  const auto sinc = halfline_oscillatory_integral(
      [](double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }, 1.0, spec, 0.0);
  CHECK(sinc.converged);
  CHECK(std::abs(sinc.value - kPi / 2) < 1e-10);
  const auto lor = halfline_oscillatory_integral(
      [](double x) { return std::cos(x) / (1 + x * x); }, 1.0, spec, 0.0);
  CHECK(std::abs(lor.value - kPi / (2 * std::exp(1.0))) < 1e-10);
  // Complex exponential with decaying envelope: integral of e^{ix} / (1 + x)^2.
  const auto cx = halfline_oscillatory_integral(
      [](double x) { return std::exp(std::complex<double>(0, 3 * x)) * std::exp(-x); },
      3.0, spec, 0.0);
  CHECK(std::abs(cx.value - 1.0 / std::complex<double>(1.0, -3.0)) < 1e-10);
  const auto zero = halfline_oscillatory_integral([](double) { return 0.0; }, 1.0, spec, 0.0);
  CHECK(zero.value == 0.0);
  CHECK(zero.converged);
}

TEST_CASE("bounded oscillation gets its Abel value") {
  const QuadratureSpec spec;
  // Abel limit of the integral of cos(2x) over [0, inf) is 0; of sin(2x) is 1/2.
  const auto c = halfline_oscillatory_integral([](double x) { return std::cos(2 * x); },
                                               2.0, spec, 0.0);
  const auto s = halfline_oscillatory_integral([](double x) { return std::sin(2 * x); },
                                               2.0, spec, 0.0);
  CHECK(std::abs(c.value) < 1e-10);
  CHECK(std::abs(s.value - 0.5) < 1e-10);
}

TEST_CASE("cut segment") {
  for (CutSubstitution sub : {CutSubstitution::TrigSubstitution, CutSubstitution::None}) {
    QuadratureSpec spec;
    spec.cut_substitution = sub;
    const auto r = cut_segment_integral(
        [](double t) { return t < 1.0 ? 1.0 / std::sqrt(1 - t * t) : 0.0; }, 1.0, spec);
    CHECK(std::abs(r.value - kPi / 2) < (sub == CutSubstitution::None ? 1e-6 : 1e-12));
    const auto lin = cut_segment_integral([](double t) { return t; }, 2.0, spec);
    CHECK(std::abs(lin.value - 2.0) < 1e-13);
    const auto zero = cut_segment_integral([](double) { return 0.0; }, 2.0, spec);
    CHECK(zero.value == 0.0);
  }
}

TEST_CASE("damped radial transforms") {
  const QuadratureSpec spec;
  for (double a : {0.3, 1.0, 2.5}) {
    for (double rho : {0.0, 0.5, 3.0}) {
      const auto r = damped_radial_transform([](double) { return 1.0; }, a, 0, rho, spec);
      CHECK(r.converged);
      CHECK(std::abs(r.value - 1.0 / std::hypot(a, rho)) < 1e-10);
    }
    const auto k = damped_radial_transform([](double x) { return x; }, a, 0, 0.0, spec);
    CHECK(std::abs(k.value - 1.0 / (a * a)) < 1e-10 * std::max(1.0, 1.0 / (a * a)));
    // Known transform: integral of e^{-ak} J_1(k rho) = (1 - a / sqrt(a^2 + rho^2)) / rho.
    const auto j1 = damped_radial_transform([](double) { return 1.0; }, a, 1, 1.5, spec);
    CHECK(std::abs(j1.value - (1.0 - a / std::hypot(a, 1.5)) / 1.5) < 1e-10);
  }
  const auto zero = damped_radial_transform([](double) { return 0.0; }, 1.0, 0, 1.0, spec);
  CHECK(zero.value == 0.0);
  CHECK_THROWS_AS(damped_radial_transform([](double) { return 1.0; }, 0.0, 0, 1.0, spec),
                  std::invalid_argument);
}

TEST_CASE("smooth half line") {
  const QuadratureSpec spec;
  const auto r = halfline_integral([](double k) { return 1.0 / (1.0 + k * k); }, 1.0, spec);
  CHECK(std::abs(r.value - kPi / 2) < 1e-10);
}

TEST_CASE("vector integrands are integrated componentwise") {
  const QuadratureSpec spec;
  const auto r = damped_radial_transform(
      [](double k) { return Eigen::Vector2cd(1.0, std::complex<double>(0, k)); }, 1.0, 0,
      0.0, spec);
  CHECK(std::abs(r.value(0) - 1.0) < 1e-10);
  CHECK(std::abs(r.value(1) - std::complex<double>(0, 1.0)) < 1e-10);
}

TEST_CASE("linearity, determinism and refinement") {
  const QuadratureSpec spec;
  auto f = [](double x) { return std::cos(x) / (1 + x * x); };
  auto g = [](double x) { return std::sin(x) / (2 + x); };
  auto h = [&](double x) { return 2.0 * f(x) - 3.0 * g(x); };
  const auto rf = halfline_oscillatory_integral(f, 1.0, spec, 0.0);
  const auto rg = halfline_oscillatory_integral(g, 1.0, spec, 0.0);
  const auto rh = halfline_oscillatory_integral(h, 1.0, spec, 0.0);
  CHECK(std::abs(rh.value - (2 * rf.value - 3 * rg.value)) <
        2 * rf.error_estimate + 3 * rg.error_estimate + rh.error_estimate + 1e-12);
  const auto again = halfline_oscillatory_integral(h, 1.0, spec, 0.0);
  CHECK(again.value == rh.value);
  CHECK(again.nodes_used == rh.nodes_used);

  QuadratureSpec tight = spec;
  tight.abs_tol /= 10;
  tight.rel_tol /= 10;
  auto radial = [](double k) { return std::sin(k) * std::sin(k) / (1 + k); };
  const auto coarse = damped_radial_transform(radial, 0.7, 0, 1.3, spec);
  const auto fine = damped_radial_transform(radial, 0.7, 0, 1.3, tight);
  CHECK(std::abs(fine.value - coarse.value) <= coarse.error_estimate);
}
