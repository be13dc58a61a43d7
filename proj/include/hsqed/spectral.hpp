#pragma once

// Quadrature engine for mode sums: adaptive Gauss-Kronrod on finite panels,
// Levin-accelerated oscillatory half-line integrals (Abel summation), the
// evanescent cut segment and exponentially damped radial transforms.
//
// Integrands may return double, std::complex<double> or an Eigen matrix of
// either. Errors are measured in the max norm over components.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <queue>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace hsqed::spectral {

enum class CutSubstitution { TrigSubstitution, None };

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-10;
  int max_oscillation_periods = 400;
  int acceleration_order = 10;
  CutSubstitution cut_substitution = CutSubstitution::TrigSubstitution;
  double damped_truncation_decades = 16.0;

  // Throws std::invalid_argument for non-positive tolerances or counts.
  void validate() const;
};

template <class V>
struct IntegralResult {
  V value{};
  double error_estimate = 0.0;
  std::size_t nodes_used = 0;
  bool converged = false;
};

namespace detail {

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class V>
inline constexpr bool is_scalar_v =
    std::is_arithmetic_v<V> || is_complex<V>::value;

template <class V>
double max_abs(const V& v) {
  if constexpr (is_scalar_v<V>) {
    return std::abs(v);
  } else {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  }
}

template <class V>
V zero_like(const V& like) {
  if constexpr (is_scalar_v<V>) {
    return V{};
  } else {
    return V::Zero(like.rows(), like.cols());
  }
}

template <class V>
std::size_t component_count(const V& v) {
  if constexpr (is_scalar_v<V>) {
    return 1;
  } else {
    return static_cast<std::size_t>(v.size());
  }
}

template <class V>
auto& component(V& v, std::size_t i) {
  if constexpr (is_scalar_v<V>) {
    return v;
  } else {
    return v.data()[i];
  }
}

template <class V>
const auto& component(const V& v, std::size_t i) {
  if constexpr (is_scalar_v<V>) {
    return v;
  } else {
    return v.data()[i];
  }
}

template <class F>
using value_t = std::decay_t<std::invoke_result_t<F&, double>>;

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
struct Gk15Rule {
  static constexpr std::array<double, 8> xgk{
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr std::array<double, 8> wgk{
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg{
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

template <class V>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  V value{};
  double error = 0.0;
};

template <class F, class V = value_t<F>>
Panel<V> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const V fc = f(c);
  V kronrod = fc * Gk15Rule::wgk[7];
  V gauss = fc * Gk15Rule::wg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * Gk15Rule::xgk[j];
    const V f1 = f(c - dx);
    const V f2 = f(c + dx);
    const V sum = f1 + f2;
    kronrod += sum * Gk15Rule::wgk[j];
    if (j % 2 == 1) gauss += sum * Gk15Rule::wg[j / 2];
  }
  Panel<V> p;
  p.a = a;
  p.b = b;
  p.value = kronrod * h;
  p.error = max_abs(V((kronrod - gauss) * h));
  return p;
}

inline constexpr std::size_t kMaxPanels = 2000;

template <class F, class V = value_t<F>>
IntegralResult<V> adaptive(F& f, std::span<const double> breaks,
                           double abs_tol, double rel_tol,
                           std::size_t max_panels = kMaxPanels,
                           const double* noise_floor = nullptr) {
  IntegralResult<V> out;
  auto worse = [](const Panel<V>& x, const Panel<V>& y) {
    return x.error < y.error;
  };
  std::priority_queue<Panel<V>, std::vector<Panel<V>>, decltype(worse)> heap(
      worse);
  bool have_value = false;
  V total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel<V> p = gk15(f, breaks[i], breaks[i + 1]);
    out.nodes_used += 15;
    if (!have_value) {
      total = p.value;
      have_value = true;
    } else {
      total += p.value;
    }
    total_err += p.error;
    heap.push(std::move(p));
  }
  if (!have_value) {
    out.converged = true;
    return out;
  }
  auto threshold = [&](const V& v) {
    const double t = std::max(abs_tol, rel_tol * max_abs(v));
    return noise_floor ? std::max(t, *noise_floor) : t;
  };
  std::size_t panels = heap.size();
  while (total_err > threshold(total)) {
    if (panels >= max_panels) break;
    Panel<V> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    Panel<V> left = gk15(f, worst.a, mid);
    Panel<V> right = gk15(f, mid, worst.b);
    out.nodes_used += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++panels;
  }
  // Re-sum from the panels to shed the drift of incremental updates.
  V sum = zero_like(total);
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error_estimate = err;
  out.converged = err <= threshold(sum);
  return out;
}

// Levin u-transform of the window partial[first .. first + order], computed
// component by component. Components whose remainder estimate vanishes fall
// back to the last partial sum.
template <class V>
V levin_u(const std::vector<V>& partial, const std::vector<V>& terms,
          std::size_t first, int order) {
  constexpr double beta = 1.0;
  const std::size_t last = first + static_cast<std::size_t>(order);
  V result = partial[last];
  const std::size_t ncomp = component_count(result);
  for (std::size_t c = 0; c < ncomp; ++c) {
    using S = std::decay_t<decltype(component(result, c))>;
    S num{};
    S den{};
    bool ok = true;
    double binom = 1.0;
    for (int j = 0; j <= order; ++j) {
      const std::size_t m = first + static_cast<std::size_t>(j);
      const S omega = (beta + static_cast<double>(m)) * component(terms[m], c);
      if (omega == S{}) {
        ok = false;
        break;
      }
      const double ratio = (beta + static_cast<double>(m)) /
                           (beta + static_cast<double>(last));
      const double coef =
          ((j % 2 == 0) ? 1.0 : -1.0) * binom * std::pow(ratio, order - 1);
      num += coef * component(partial[m], c) / omega;
      den += coef / omega;
      binom = binom * static_cast<double>(order - j) /
              static_cast<double>(j + 1);
    }
    if (ok && den != S{} && std::isfinite(std::abs(num / den))) {
      component(result, c) = num / den;
    }
  }
  return result;
}

}  // namespace detail

// Integral of f over [a, b] with global adaptive subdivision.
template <class F>
auto finite_integral(F&& f, double a, double b, const QuadratureSpec& spec) {
  const std::array<double, 2> breaks{a, b};
  return detail::adaptive(f, std::span<const double>(breaks), spec.abs_tol,
                          spec.rel_tol);
}

// Integral of f over [0, inf) for an integrand that oscillates with
// exp(+-i k s) and need not decay. The range past `start` (rounded up to a
// whole number of half periods) is cut into half periods pi/s; the partial
// sums are extrapolated with a sliding Levin u-transform, which assigns the
// Abel-summed value to bounded non-decaying oscillations.
template <class F>
auto halfline_oscillatory_integral(F&& f, double s, const QuadratureSpec& spec,
                                   double start = 0.0) {
  using V = detail::value_t<F>;
  IntegralResult<V> out;
  const double period = std::numbers::pi / s;
  const int order = spec.acceleration_order;

  std::size_t head_panels = 0;
  double x0 = 0.0;
  if (start > 0.0) {
    head_panels = static_cast<std::size_t>(std::ceil(start / period));
    x0 = static_cast<double>(head_panels) * period;
  }
  V head{};
  double head_err = 0.0;
  if (head_panels > 0) {
    std::vector<double> breaks(head_panels + 1);
    for (std::size_t i = 0; i <= head_panels; ++i) {
      breaks[i] = static_cast<double>(i) * period;
    }
    breaks.back() = x0;
    auto r = detail::adaptive(f, std::span<const double>(breaks),
                              0.1 * spec.abs_tol, 0.1 * spec.rel_tol);
    head = r.value;
    head_err = r.error_estimate;
    out.nodes_used += r.nodes_used;
  }

  std::vector<V> terms;
  std::vector<V> partial;
  double panel_err = 0.0;
  double prev_diff = -1.0;
  V prev_est{};
  bool have_est = false;
  bool all_zero = detail::max_abs(head) == 0.0 || head_panels == 0;

  for (int m = 0; m < spec.max_oscillation_periods; ++m) {
    const std::array<double, 2> panel{x0 + m * period, x0 + (m + 1) * period};
    auto r = detail::adaptive(f, std::span<const double>(panel),
                              0.1 * spec.abs_tol, 0.1 * spec.rel_tol, 64);
    out.nodes_used += r.nodes_used;
    panel_err += r.error_estimate;
    if (m == 0 && head_panels == 0) head = detail::zero_like(r.value);
    all_zero = all_zero && detail::max_abs(r.value) == 0.0;
    partial.push_back(m == 0 ? V(head + r.value) : V(partial.back() + r.value));
    terms.push_back(r.value);

    if (all_zero && m >= 1) {
      out.value = partial.back();
      out.error_estimate = 0.0;
      out.converged = true;
      return out;
    }
    if (m < order) continue;
    const V est = detail::levin_u(partial, terms,
                                  static_cast<std::size_t>(m - order), order);
    if (have_est) {
      const double diff = detail::max_abs(V(est - prev_est));
      const double tol =
          std::max(spec.abs_tol, spec.rel_tol * detail::max_abs(est));
      if (diff <= tol && prev_diff >= 0.0 && prev_diff <= tol) {
        out.value = est;
        out.error_estimate = diff + head_err + panel_err;
        out.converged = true;
        return out;
      }
      prev_diff = diff;
    }
    prev_est = est;
    have_est = true;
  }
  out.value = have_est ? prev_est : partial.back();
  out.error_estimate = std::max(prev_diff, 0.0) + head_err + panel_err;
  out.converged = false;
  return out;
}

// Integral of f over the evanescent segment t in (0, gamma). With the trig
// substitution t = gamma sin(u) the square-root endpoint behaviour of the
// mode measure is removed.
template <class F>
auto cut_segment_integral(F&& f, double gamma, const QuadratureSpec& spec) {
  using V = detail::value_t<F>;
  if (!(gamma > 0.0)) {
    IntegralResult<V> out;
    out.converged = true;
    // Fixed shapes need no sample; the integrand may be singular at t = 0.
    if constexpr (detail::is_scalar_v<V>) {
      out.value = V{};
    } else if constexpr (V::SizeAtCompileTime != Eigen::Dynamic) {
      out.value = V::Zero();
    } else {
      out.value = detail::zero_like(f(0.0));
      out.nodes_used = 1;
    }
    return out;
  }
  if (spec.cut_substitution == CutSubstitution::TrigSubstitution) {
    auto g = [&](double u) -> V {
      return V(f(gamma * std::sin(u)) * (gamma * std::cos(u)));
    };
    const std::array<double, 3> breaks{0.0, 0.25 * std::numbers::pi,
                                       0.5 * std::numbers::pi};
    return detail::adaptive(g, std::span<const double>(breaks), spec.abs_tol,
                            spec.rel_tol);
  }
  const std::array<double, 4> breaks{0.0, 0.5 * gamma, 0.9 * gamma, gamma};
  return detail::adaptive(f, std::span<const double>(breaks), spec.abs_tol,
                          spec.rel_tol);
}

// Integral of f over [0, inf) for a smooth, non-oscillatory integrand decaying
// at least like 1/k^2, via k = scale u / (1 - u).
template <class F>
auto halfline_integral(F&& f, double scale, const QuadratureSpec& spec) {
  using V = detail::value_t<F>;
  auto g = [&](double u) -> V {
    const double w = 1.0 - u;
    return V(f(scale * u / w) * (scale / (w * w)));
  };
  const std::array<double, 5> breaks{0.0, 0.25, 0.5, 0.75, 1.0};
  return detail::adaptive(g, std::span<const double>(breaks), spec.abs_tol,
                          spec.rel_tol);
}

// Integral over [0, K] of an integrand that carries its own exp(-k damping)
// factor, with K = decades * ln(10) / damping. Panels follow both the decay
// and the Bessel oscillation scale pi / rho. The neglected tail is estimated
// from the integrand at K and added to the error.
//
// An integrand that is itself the result of a quadrature may publish a bound
// on its accumulated error through `noise_floor`; subdivision stops once the
// estimate falls below it, and it is added to the reported error.
template <class F>
auto truncated_radial_integral(F&& f, double damping, double rho,
                               const QuadratureSpec& spec,
                               const double* noise_floor = nullptr) {
  using V = detail::value_t<F>;
  if (!(damping > 0.0)) {
    throw std::invalid_argument("damped radial integral needs damping > 0");
  }
  const double kmax = spec.damped_truncation_decades * std::log(10.0) / damping;
  const auto n_decay = static_cast<std::size_t>(
      std::ceil(spec.damped_truncation_decades / 2.0));
  const auto n_osc =
      static_cast<std::size_t>(std::ceil(kmax * std::abs(rho) / std::numbers::pi));
  const std::size_t panels = std::clamp<std::size_t>(std::max(n_decay, n_osc), 1, 400);
  std::vector<double> breaks(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    breaks[i] = kmax * static_cast<double>(i) / static_cast<double>(panels);
  }
  IntegralResult<V> out =
      detail::adaptive(f, std::span<const double>(breaks), spec.abs_tol,
                       spec.rel_tol, detail::kMaxPanels, noise_floor);
  const V tail = f(kmax);
  out.nodes_used += 1;
  const double tail_err = detail::max_abs(tail) / damping;
  double allowed = std::max(spec.abs_tol, spec.rel_tol * detail::max_abs(out.value));
  if (noise_floor) {
    out.error_estimate += *noise_floor;
    allowed = std::max(allowed, 2.0 * *noise_floor);
  }
  out.error_estimate += tail_err;
  out.converged = out.converged && tail_err <= allowed;
  return out;
}

// Integral over [0, inf) of f(k) exp(-k a) J_nu(k rho).
template <class F>
auto damped_radial_transform(F&& f, double a, int nu, double rho,
                             const QuadratureSpec& spec) {
  using V = detail::value_t<F>;
  auto g = [&](double k) -> V {
    const double w = std::exp(-k * a) *
                     std::cyl_bessel_j(static_cast<double>(nu), k * rho);
    return V(f(k) * w);
  };
  return truncated_radial_integral(g, a, rho, spec);
}

}  // namespace hsqed::spectral
