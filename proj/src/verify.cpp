#include "hsqed/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "hsqed/energy.hpp"
#include "hsqed/errors.hpp"
#include "hsqed/fresnel.hpp"
#include "hsqed/modes.hpp"

namespace hsqed {
namespace {

using Params = std::map<std::string, ParamValue>;
using Clock = std::chrono::steady_clock;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  // Uniform on [a, b) from the top 53 bits; independent of the standard
  // library's distribution implementations.
  double uniform(double a, double b) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

 private:
  std::mt19937_64 rng_;
};

std::uint64_t stream_seed(std::uint64_t seed, int criterion) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(criterion);
}

std::int64_t elapsed_ms(Clock::time_point start, const RunConfig& cfg) {
  if (!cfg.record_runtime) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

Params base_params(int criterion, const RunConfig& cfg) {
  return {{"criterion", static_cast<double>(criterion)},
          {"seed", static_cast<double>(cfg.seed)}};
}

void add_pair(Params& p, const PointPair& pair) {
  p["x"] = pair.r.x();
  p["y"] = pair.r.y();
  p["z"] = pair.r.z();
  p["xp"] = pair.rprime.x();
  p["yp"] = pair.rprime.y();
  p["zp"] = pair.rprime.z();
}

CheckReport failed(std::string name, Params params, double tol,
                   const std::string& what) {
  params["error"] = what;
  CheckReport r = make_check(std::move(name), std::move(params), {}, {},
                             std::nan(""), std::nan(""), tol,
                             ToleranceMode::Absolute);
  return r;
}

// Runs tasks on up to cfg.threads workers; results keep task order.
std::vector<std::vector<CheckReport>> run_parallel(
    std::size_t count, const RunConfig& cfg,
    const std::function<std::vector<CheckReport>(std::size_t)>& task) {
  std::vector<std::vector<CheckReport>> out(count);
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) out[i] = task(i);
  };
  if (workers == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return out;
}

std::vector<CheckReport> flatten(std::vector<std::vector<CheckReport>> parts) {
  std::vector<CheckReport> out;
  for (auto& p : parts) {
    for (auto& r : p) out.push_back(std::move(r));
  }
  return out;
}

double max_rel(const KernelTensor& a, const KernelTensor& b) {
  return tensor_relative_error(a, b);
}

std::vector<double> real_parts(const KernelTensor& t) {
  std::vector<double> v;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) v.push_back(t(i, j).real());
  }
  return v;
}

CheckReport tensor_check(std::string name, Params params,
                         const KernelTensor& lhs, const KernelTensor& rhs,
                         double tol, Clock::time_point start,
                         const RunConfig& cfg) {
  const double abs_err = (lhs - rhs).cwiseAbs().maxCoeff();
  return make_check(std::move(name), std::move(params), real_parts(lhs),
                    real_parts(rhs), abs_err, max_rel(lhs, rhs), tol,
                    ToleranceMode::Relative, elapsed_ms(start, cfg));
}

const std::vector<double> kIndices{1.5, 2.0, 4.0};

// --- 1: Fresnel identities -------------------------------------------------

std::vector<CheckReport> fresnel_identities(const RunConfig& cfg) {
  const auto start = Clock::now();
  Sampler s(stream_seed(cfg.seed, 1));
  double antisym = 0.0, ratio = 0.0, flux = 0.0, conj = 0.0;
  constexpr int kSamples = 1000;
  for (int i = 0; i < kSamples; ++i) {
    const Medium m(s.uniform(1.0, 6.0));
    const double kp = s.uniform(0.01, 10.0);
    cplx kz;
    if (i % 2 == 0) {
      const double k = s.uniform(0.01, 10.0);
      kz = s.uniform(0.0, 1.0) < 0.5 ? k : -k;
    } else {
      kz = cplx(0.0, evanescent_threshold(m, kp) * s.uniform(0.001, 0.999));
    }
    for (Polarization pol : {Polarization::TE, Polarization::TM}) {
      const cplx kzd = refracted_kz(m, kp, kz);
      const FresnelSet f = fresnel_coefficients(m, pol, kz, kzd);
      antisym = std::max(antisym, std::abs(f.r_left + f.r_right));
      ratio = std::max(ratio, std::abs(f.t_left - (kzd / kz) * f.t_right));
      flux = std::max(flux, cancellation_residual(m, pol, kp, kz));
      const FresnelSet g = fresnel_coefficients(m, pol, kp, std::conj(kz));
      conj = std::max({conj, std::abs(g.r_right - std::conj(f.r_right)),
                       std::abs(g.t_left - std::conj(f.t_left))});
    }
  }
  const auto ms = elapsed_ms(start, cfg);
  Params p = base_params(1, cfg);
  p["samples"] = static_cast<double>(kSamples);
  const double tol = cfg.tol.fresnel;
  std::vector<CheckReport> out;
  for (auto [name, v] : {std::pair{"fresnel.reflection_antisymmetry", antisym},
                         std::pair{"fresnel.transmission_ratio", ratio},
                         std::pair{"fresnel.flux_cancellation", flux},
                         std::pair{"fresnel.conjugation_symmetry", conj}}) {
    out.push_back(make_check(name, p, {v}, {0.0}, v, v, tol,
                             ToleranceMode::Absolute, ms));
  }
  return out;
}

// --- 2: mode matching and gauge divergence ---------------------------------

struct ModeLabel {
  double kpar;
  double phi;
  cplx kz;
};

// 10 x 10 grid; the first three kz columns are on the evanescent segment and
// only carry left-incident modes.
std::vector<ModeLabel> mode_grid(const Medium& m) {
  std::vector<ModeLabel> grid;
  for (int i = 0; i < 10; ++i) {
    const double kp = 0.2 + 0.5 * i;
    for (int j = 0; j < 10; ++j) {
      cplx kz;
      if (j < 3) {
        kz = cplx(0.0, evanescent_threshold(m, kp) * (j + 1) / 4.0);
      } else {
        kz = 0.3 + 0.7 * (j - 3);
      }
      grid.push_back({kp, 0.3 + 0.61 * (i + j), kz});
    }
  }
  return grid;
}

std::vector<CheckReport> mode_matching(const RunConfig& cfg) {
  std::vector<CheckReport> out;
  for (double n : kIndices) {
    const auto start = Clock::now();
    const Medium m(n);
    double matching = 0.0;
    double divergence = 0.0;
    int modes = 0;
    for (const ModeLabel& g : mode_grid(m)) {
      for (Side side : {Side::Right, Side::Left}) {
        if (side == Side::Right && g.kz.imag() != 0.0) continue;
        for (Polarization pol : {Polarization::TE, Polarization::TM}) {
          const SpectralPoint pt{
              g.kpar * Eigen::Vector2d(std::cos(g.phi), std::sin(g.phi)), g.kz,
              side, pol};
          const ModeStructure ms = mode_structure(m, pt);
          ++modes;
          const Eigen::Vector3d r0(0.2, -0.1, 0.0);
          const Vector3c up = evaluate(ms, r0, Region::Vacuum);
          const Vector3c dn = evaluate(ms, r0, Region::Dielectric);
          const double scale = std::max(up.cwiseAbs().maxCoeff(),
                                        dn.cwiseAbs().maxCoeff());
          const double res = std::max(
              {std::abs(up.x() - dn.x()), std::abs(up.y() - dn.y()),
               std::abs(up.z() - m.n2() * dn.z())});
          matching = std::max(matching, res / scale);

          const double w = mode_frequency(pt);
          const double kmax = n * w;
          const double h = 1e-3 / kmax;
          for (double z : {0.37, -0.37}) {
            const Eigen::Vector3d r(0.2, -0.1, z);
            cplx div = 0.0;
            double fmax = 0.0;
            for (int b = 0; b < 3; ++b) {
              auto f = [&](double off) {
                Eigen::Vector3d q = r;
                q(b) += off;
                const Vector3c v = epsilon_profile(m, q.z()) * evaluate(ms, q);
                fmax = std::max(fmax, v.cwiseAbs().maxCoeff());
                return v(b);
              };
              div += (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) /
                     (12.0 * h);
            }
            divergence = std::max(divergence, std::abs(div) / (kmax * fmax));
          }
        }
      }
    }
    const auto ms = elapsed_ms(start, cfg);
    Params p = base_params(2, cfg);
    p["n"] = n;
    p["modes"] = static_cast<double>(modes);
    out.push_back(make_check("modes.interface_matching", p, {matching}, {0.0},
                             matching, matching, cfg.tol.mode_matching,
                             ToleranceMode::Absolute, ms));
    out.push_back(make_check("modes.gauge_divergence", p, {divergence}, {0.0},
                             divergence, divergence, cfg.tol.mode_divergence,
                             ToleranceMode::Absolute, ms));
  }
  return out;
}

// --- 7: Poisson jump --------------------------------------------------------

std::vector<CheckReport> poisson_jump(const RunConfig& cfg) {
  std::vector<CheckReport> out;
  for (double n : kIndices) {
    const auto start = Clock::now();
    const Medium m(n);
    double worst = 0.0;
    int points = 0;
    for (double kp : {0.3, 1.0, 2.5, 6.0}) {
      const double gamma = evanescent_threshold(m, kp);
      const std::array<cplx, 5> kzs{cplx(0.2), cplx(1.0), cplx(3.0),
                                    cplx(0.0, 0.5 * gamma),
                                    cplx(0.0, 0.9 * gamma)};
      for (const cplx& kz : kzs) {
        ++points;
        worst = std::max(worst, poisson_jump_residual(m, kp, kz, Side::Left));
        if (kz.imag() == 0.0) {
          worst = std::max(worst, poisson_jump_residual(m, kp, kz, Side::Right));
        }
      }
    }
    Params p = base_params(7, cfg);
    p["n"] = n;
    p["points"] = static_cast<double>(points);
    out.push_back(make_check("modes.poisson_jump", p, {worst}, {0.0}, worst,
                             worst, cfg.tol.poisson, ToleranceMode::Absolute,
                             elapsed_ms(start, cfg)));
  }
  return out;
}

// --- 3: residue versus quadrature -------------------------------------------

std::vector<CheckReport> residue_vs_quadrature(const RunConfig& cfg) {
  const std::vector<double> kpars{0.3, 0.7, 1.2, 2.0, 3.0};
  const std::vector<std::pair<double, double>> heights{
      {0.2, 0.5},   {0.5, 0.5},  {1.0, 0.3},  {0.4, 1.1},  {1.5, 0.8},
      {-0.2, 0.5},  {-0.5, 0.3}, {-1.0, 0.7}, {-0.3, 1.2}, {-0.6, 0.6}};
  auto parts = run_parallel(kIndices.size(), cfg, [&](std::size_t idx) {
    const double n = kIndices[idx];
    const auto start = Clock::now();
    const Medium m(n);
    Params p = base_params(3, cfg);
    p["n"] = n;
    p["points"] = static_cast<double>(kpars.size() * heights.size());
    double tm_err = 0.0, tm_abs = 0.0, te_ratio = 0.0, te_abs = 0.0;
    try {
      for (double kp : kpars) {
        for (auto [z, zp] : heights) {
          const KernelTensor cf = residue_closed_form_tensor(m, kp, z, zp);
          const auto tm = kz_spectral_tensor(m, Polarization::TM, kp, z, zp, cfg.quad);
          const auto te = kz_spectral_tensor(m, Polarization::TE, kp, z, zp, cfg.quad);
          if (!tm.converged || !te.converged) {
            throw NonConvergenceError("kz integral did not converge");
          }
          const double scale = cf.cwiseAbs().maxCoeff();
          tm_err = std::max(tm_err, tensor_relative_error(tm.value, cf));
          tm_abs = std::max(tm_abs, (tm.value - cf).cwiseAbs().maxCoeff());
          te_abs = std::max(te_abs, te.value.cwiseAbs().maxCoeff());
          te_ratio = std::max(te_ratio, te.value.cwiseAbs().maxCoeff() / scale);
        }
      }
    } catch (const std::exception& e) {
      return std::vector<CheckReport>{
          failed("kernels.residue_tm", p, cfg.tol.residue, e.what())};
    }
    const auto ms = elapsed_ms(start, cfg);
    return std::vector<CheckReport>{
        make_check("kernels.residue_tm", p, {tm_err}, {0.0}, tm_abs, tm_err,
                   cfg.tol.residue, ToleranceMode::Relative, ms),
        make_check("kernels.residue_te", p, {te_ratio}, {0.0}, te_abs, te_ratio,
                   cfg.tol.residue_te, ToleranceMode::Relative, ms)};
  });
  return flatten(std::move(parts));
}

// --- 4, 5, 6: assembled kernels against closed forms -------------------------

std::vector<CheckReport> kernel_closed_forms(int criterion, const RunConfig& cfg) {
  const auto pairs = kernel_pair_set(cfg.seed, 20);
  const KernelKind kind = criterion == 4   ? KernelKind::GeneralizedDelta
                          : criterion == 5 ? KernelKind::GaugeDifference
                                           : KernelKind::TrueCoulomb;
  const std::vector<double> ns =
      criterion == 6 ? std::vector<double>{1.5, 4.0} : kIndices;
  std::vector<CheckReport> out;
  for (double n : ns) {
    const Medium m(n);
    RunConfig c = cfg;
    auto reports = verify_kernel_points(m, kind, pairs, c);
    for (auto& r : reports) r.params["criterion"] = static_cast<double>(criterion);
    out.insert(out.end(), reports.begin(), reports.end());
  }
  if (criterion == 6) {
    // n-independence: compare the two indices pair by pair.
    const std::size_t np = pairs.size();
    for (std::size_t i = 0; i < np; ++i) {
      const CheckReport& a = out[i];
      const CheckReport& b = out[np + i];
      Params p = base_params(6, cfg);
      add_pair(p, pairs[i]);
      p["n_a"] = 1.5;
      p["n_b"] = 4.0;
      if (a.lhs.size() != 9 || b.lhs.size() != 9) {
        out.push_back(failed("kernels.true_coulomb_n_independence", p,
                             cfg.tol.kernel, "assembly failed"));
        continue;
      }
      double diff = 0.0, scale = 0.0;
      for (std::size_t k = 0; k < 9; ++k) {
        diff = std::max(diff, std::abs(a.lhs[k] - b.lhs[k]));
        scale = std::max(scale, std::abs(b.lhs[k]));
      }
      out.push_back(make_check("kernels.true_coulomb_n_independence", p, a.lhs,
                               b.lhs, diff, diff / scale, cfg.tol.kernel,
                               ToleranceMode::Relative, 0));
    }
  }
  return out;
}

// --- 8: curl annihilation ---------------------------------------------------

std::vector<CheckReport> curl_annihilation(const RunConfig& cfg) {
  const Medium m(2.0);
  const auto pairs = kernel_pair_set(stream_seed(cfg.seed, 8), 10);
  auto parts = run_parallel(pairs.size(), cfg, [&](std::size_t i) {
    const auto start = Clock::now();
    const PointPair& pair = pairs[i];
    Params p = base_params(8, cfg);
    p["n"] = 2.0;
    add_pair(p, pair);
    try {
      const double len = singular_distance(pair);
      const double h = 1e-3 * len;
      p["fd_step"] = h;
      const CurlSet c = kernel_curls(m, pair, h, cfg.quad);
      const double x_scale = c.gauge_value.cwiseAbs().maxCoeff();
      const double tc_scale = c.true_coulomb_value.cwiseAbs().maxCoeff();
      const double tc_len = (pair.r - pair.rprime).norm();
      const double curl_x = c.gauge_difference.cwiseAbs().maxCoeff() * len;
      const double gd_tc =
          (c.generalized_delta - c.true_coulomb).cwiseAbs().maxCoeff() * tc_len;
      const auto ms = elapsed_ms(start, cfg);
      return std::vector<CheckReport>{
          make_check("kernels.curl_gauge_difference", p, {curl_x / x_scale},
                     {0.0}, curl_x, curl_x / x_scale, cfg.tol.curl,
                     ToleranceMode::Relative, ms),
          make_check("kernels.curl_gd_vs_true_coulomb", p,
                     {c.generalized_delta.cwiseAbs().maxCoeff() * tc_len / tc_scale},
                     {c.true_coulomb.cwiseAbs().maxCoeff() * tc_len / tc_scale},
                     gd_tc, gd_tc / tc_scale, cfg.tol.curl,
                     ToleranceMode::Relative, ms)};
    } catch (const std::exception& e) {
      return std::vector<CheckReport>{
          failed("kernels.curl_gauge_difference", p, cfg.tol.curl, e.what())};
    }
  });
  return flatten(std::move(parts));
}

// --- 9: energy ----------------------------------------------------------------

std::vector<CheckReport> energy_checks(const RunConfig& cfg) {
  std::vector<CheckReport> out;
  const double q = 1.0;
  const double tol = cfg.tol.energy;
  for (double n : kIndices) {
    for (double z0 : {0.5, 1.0, 2.0}) {
      const auto start = Clock::now();
      const Medium m(n);
      Params p = base_params(9, cfg);
      p["n"] = n;
      p["z0"] = z0;
      p["q"] = q;
      try {
        const ShiftResult s = second_order_shift(q, m, z0, cfg.quad);
        const double sum = gauge_invariance_sum(q, m, z0, cfg.quad);
        const double dc = double_commutator_cnumber(q, m, z0, cfg.quad);
        const auto ms = elapsed_ms(start, cfg);
        const double ratio_err = std::abs(s.ratio - s.expected_ratio);
        out.push_back(make_check("energy.ratio", p, {s.ratio}, {s.expected_ratio},
                                 ratio_err, ratio_err / s.expected_ratio, tol,
                                 ToleranceMode::Absolute, ms));
        const double g = sum / s.v_es;
        out.push_back(make_check("energy.gauge_invariance", p, {g}, {1.0},
                                 std::abs(g - 1.0), std::abs(g - 1.0), tol,
                                 ToleranceMode::Absolute, ms));
        const double dc_err = std::abs(dc + s.delta_e);
        out.push_back(make_check("energy.double_commutator", p, {dc},
                                 {-s.delta_e}, dc_err,
                                 dc_err / std::abs(s.delta_e), tol,
                                 ToleranceMode::Relative, ms));
      } catch (const std::exception& e) {
        out.push_back(failed("energy.ratio", p, tol, e.what()));
      }
    }
  }
  return out;
}

// --- 10: perfect-reflector limit ------------------------------------------

std::vector<CheckReport> perfect_reflector(const RunConfig& cfg) {
  const auto start = Clock::now();
  const PointPair pair{Eigen::Vector3d(0.3, 0.1, 0.4),
                       Eigen::Vector3d(0.0, 0.0, 0.5)};
  const std::vector<double> ns{10.0, 30.0, 100.0};
  Params p = base_params(10, cfg);
  add_pair(p, pair);
  try {
    const std::vector<double> dev =
        perfect_reflector_convergence(pair, ns, cfg.quad);
    const double slope = loglog_slope(ns, dev);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      p["deviation_n" + std::to_string(static_cast<int>(ns[i]))] = dev[i];
    }
    const double err = std::abs(slope + 2.0);
    return {make_check("kernels.perfect_reflector_slope", p, {slope}, {-2.0},
                       err, err / 2.0, cfg.tol.reflector_slope,
                       ToleranceMode::Relative, elapsed_ms(start, cfg))};
  } catch (const std::exception& e) {
    return {failed("kernels.perfect_reflector_slope", p,
                   cfg.tol.reflector_slope, e.what())};
  }
}

}  // namespace

const char* to_string(Suite suite) {
  switch (suite) {
    case Suite::Fresnel: return "fresnel";
    case Suite::Modes: return "modes";
    case Suite::Kernels: return "kernels";
    case Suite::Energy: return "energy";
    case Suite::All: return "all";
  }
  return "?";
}

Suite suite_from_string(const std::string& name) {
  for (Suite s : {Suite::Fresnel, Suite::Modes, Suite::Kernels, Suite::Energy,
                  Suite::All}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<int> criteria_of(Suite suite) {
  switch (suite) {
    case Suite::Fresnel: return {1};
    case Suite::Modes: return {2, 7};
    case Suite::Kernels: return {3, 4, 5, 6, 8, 10};
    case Suite::Energy: return {9};
    case Suite::All: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  }
  return {};
}

std::vector<CheckReport> run_criterion(int criterion, const RunConfig& cfg) {
  switch (criterion) {
    case 1: return fresnel_identities(cfg);
    case 2: return mode_matching(cfg);
    case 3: return residue_vs_quadrature(cfg);
    case 4:
    case 5:
    case 6: return kernel_closed_forms(criterion, cfg);
    case 7: return poisson_jump(cfg);
    case 8: return curl_annihilation(cfg);
    case 9: return energy_checks(cfg);
    case 10: return perfect_reflector(cfg);
    default: throw std::invalid_argument("criterion must be in 1..10");
  }
}

std::vector<CheckReport> run_verification_suite(Suite suite,
                                                const RunConfig& cfg) {
  std::vector<CheckReport> out;
  for (int c : criteria_of(suite)) {
    auto r = run_criterion(c, cfg);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

std::vector<PointPair> kernel_pair_set(std::uint64_t seed, std::size_t count) {
  Sampler s(stream_seed(seed, 4));
  std::vector<PointPair> pairs;
  while (pairs.size() < count) {
    const double side = pairs.size() < (count + 1) / 2 ? 1.0 : -1.0;
    PointPair p;
    p.rprime = Eigen::Vector3d(s.uniform(-0.25, 0.25), s.uniform(-0.25, 0.25),
                               s.uniform(0.2, 1.2));
    const double rho = s.uniform(0.0, 1.5);
    const double phi = s.uniform(0.0, 2.0 * std::numbers::pi);
    p.r = Eigen::Vector3d(p.rprime.x() + rho * std::cos(phi),
                          p.rprime.y() + rho * std::sin(phi),
                          side * s.uniform(0.15, 1.35));
    if ((p.r - p.rprime).norm() < 0.25) continue;
    pairs.push_back(p);
  }
  return pairs;
}

std::vector<CheckReport> verify_kernel_points(const Medium& medium,
                                              KernelKind kind,
                                              const std::vector<PointPair>& pairs,
                                              const RunConfig& cfg) {
  const std::string name = std::string("kernels.") + to_string(kind);
  auto parts = run_parallel(pairs.size(), cfg, [&](std::size_t i) {
    const auto start = Clock::now();
    const PointPair& pair = pairs[i];
    Params p{{"seed", static_cast<double>(cfg.seed)},
             {"n", medium.index()},
             {"kind", std::string(to_string(kind))}};
    add_pair(p, pair);
    try {
      if (kind == KernelKind::PerfectReflector) {
        const KernelTensor gd =
            assemble_kernel(medium, KernelKind::GeneralizedDelta, pair, cfg.quad)
                .value;
        const KernelTensor limit = closed_form_kernel(medium, kind, pair);
        const KernelTensor predicted =
            ((medium.image_strength() - 1.0) * image_grad_grad(pair)).cast<cplx>();
        return std::vector<CheckReport>{tensor_check(
            name, p, gd - limit, predicted, cfg.tol.kernel, start, cfg)};
      }
      const KernelTensor a = assemble_kernel(medium, kind, pair, cfg.quad).value;
      const KernelTensor b = closed_form_kernel(medium, kind, pair);
      return std::vector<CheckReport>{
          tensor_check(name, p, a, b, cfg.tol.kernel, start, cfg)};
    } catch (const std::exception& e) {
      return std::vector<CheckReport>{failed(name, p, cfg.tol.kernel, e.what())};
    }
  });
  return flatten(std::move(parts));
}

}  // namespace hsqed
