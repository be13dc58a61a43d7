#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hsqed/config.hpp"
#include "hsqed/energy.hpp"
#include "hsqed/errors.hpp"
#include "hsqed/fresnel.hpp"
#include "hsqed/greens.hpp"
#include "hsqed/kernels.hpp"
#include "hsqed/modes.hpp"
#include "hsqed/report.hpp"
#include "hsqed/verify.hpp"

using namespace hsqed;

namespace {

struct Globals {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  std::int64_t seed = -1;
};

// Exit status for usage, config and input errors.
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig run_config(const Globals& g) {
  RunConfig cfg = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  if (g.seed >= 0) cfg.seed = static_cast<std::uint64_t>(g.seed);
  return cfg;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(g.out_path, text);
  }
}

int emit_reports(const Globals& g, const std::vector<CheckReport>& reports) {
  emit(g, g.format == "csv" ? reports_to_csv(reports) : reports_to_json(reports));
  return all_pass(reports) ? 0 : 1;
}

std::vector<double> linspace(double a, double b, int count) {
  if (count < 1) throw UsageError("grid count must be positive");
  std::vector<double> v;
  for (int i = 0; i < count; ++i) {
    v.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
  }
  return v;
}

std::string num(double x) { return format_number(x); }

std::string cplx_cols(cplx z) { return num(z.real()) + "," + num(z.imag()); }

Polarization parse_pol(const std::string& s) {
  if (s == "te" || s == "TE") return Polarization::TE;
  if (s == "tm" || s == "TM") return Polarization::TM;
  throw UsageError("polarization must be te or tm");
}

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw UsageError("side must be left or right");
}

GreenVariant parse_variant(const std::string& s) {
  for (GreenVariant v : {GreenVariant::Free, GreenVariant::Reflected,
                         GreenVariant::Transmitted, GreenVariant::Full}) {
    if (s == to_string(v)) return v;
  }
  throw UsageError("unknown Green's function variant '" + s + "'");
}

Eigen::Vector3d vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw UsageError(std::string(what) + " needs x,y,z");
  return {v[0], v[1], v[2]};
}

// Point pairs as CSV rows x,y,z,xp,yp,zp; a non-numeric first row is a header.
std::vector<PointPair> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read points file '" + path + "'");
  std::vector<PointPair> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric && line_no == 1 && pairs.empty()) continue;
    if (!numeric || v.size() != 6) {
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": expected six numbers x,y,z,xp,yp,zp");
    }
    pairs.push_back({{v[0], v[1], v[2]}, {v[3], v[4], v[5]}});
  }
  return pairs;
}

nlohmann::ordered_json shift_json(const ShiftResult& s, double n, double z0,
                                  double q) {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["z0"] = z0;
  j["q"] = q;
  j["delta_e"] = s.delta_e;
  j["v_es"] = s.v_es;
  j["ratio"] = s.ratio;
  j["expected_ratio"] = s.expected_ratio;
  j["left_contribution"] = s.left_contribution;
  j["right_contribution"] = s.right_contribution;
  j["error_estimate"] = s.error_estimate;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macroscopic QED near a dielectric half-space"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "flat key = value config file");
  app.add_option("--out", g.out_path, "output file (default stdout)");
  app.add_option("--format", g.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "seed for randomized sampling")
      ->check(CLI::NonNegativeNumber);

  std::function<int()> action;

  // fresnel
  auto* fresnel = app.add_subcommand("fresnel", "Fresnel coefficients over a grid (CSV)");
  double f_n = 1.5;
  std::vector<double> f_kpar{0.5, 1.0, 2.0};
  std::vector<double> f_kz{0.5, 1.0, 2.0};
  std::vector<double> f_kz_imag;
  fresnel->add_option("--n", f_n, "refractive index")->required();
  fresnel->add_option("--kpar", f_kpar, "kpar values")->delimiter(',');
  fresnel->add_option("--kz", f_kz, "real vacuum-side kz values")->delimiter(',');
  fresnel->add_option("--kz-imag", f_kz_imag, "imaginary kz = i t values")
      ->delimiter(',');
  fresnel->callback([&] {
    action = [&] {
      const Medium m(f_n);
      std::string out =
          "n,kpar,kz_re,kz_im,pol,kzd_re,kzd_im,r_right_re,r_right_im,"
          "t_right_re,t_right_im,r_left_re,r_left_im,t_left_re,t_left_im\n";
      std::vector<cplx> kzs;
      for (double k : f_kz) kzs.emplace_back(k, 0.0);
      for (double t : f_kz_imag) kzs.emplace_back(0.0, t);
      for (double kp : f_kpar) {
        for (const cplx& kz : kzs) {
          for (Polarization pol : {Polarization::TE, Polarization::TM}) {
            const cplx kzd = refracted_kz(m, kp, kz);
            const FresnelSet s = fresnel_coefficients(m, pol, kz, kzd);
            out += num(f_n) + "," + num(kp) + "," + cplx_cols(kz) + "," +
                   to_string(pol) + "," + cplx_cols(kzd) + "," +
                   cplx_cols(s.r_right) + "," + cplx_cols(s.t_right) + "," +
                   cplx_cols(s.r_left) + "," + cplx_cols(s.t_left) + "\n";
          }
        }
      }
      emit(g, out);
      return 0;
    };
  });

  // modes eval
  auto* modes = app.add_subcommand("modes", "Carniglia-Mandel modes");
  modes->require_subcommand(1);
  auto* modes_eval = modes->add_subcommand("eval", "mode profile on a z grid (CSV)");
  double m_n = 1.5, m_kx = 1.0, m_ky = 0.0, m_kz = 1.0, m_kz_imag = 0.0;
  double m_zmin = -2.0, m_zmax = 2.0;
  int m_count = 41;
  std::string m_side = "right", m_pol = "tm";
  modes_eval->add_option("--n", m_n, "refractive index")->required();
  modes_eval->add_option("--kx", m_kx, "kx");
  modes_eval->add_option("--ky", m_ky, "ky");
  modes_eval->add_option("--kz", m_kz, "real vacuum-side kz");
  modes_eval->add_option("--kz-imag", m_kz_imag,
                         "evanescent label kz = i t (left modes); overrides --kz");
  modes_eval->add_option("--side", m_side, "left or right");
  modes_eval->add_option("--pol", m_pol, "te or tm");
  modes_eval->add_option("--z-min", m_zmin, "first z");
  modes_eval->add_option("--z-max", m_zmax, "last z");
  modes_eval->add_option("--count", m_count, "number of z points");
  modes_eval->callback([&] {
    action = [&] {
      const Medium m(m_n);
      const cplx kz = m_kz_imag != 0.0 ? cplx(0.0, m_kz_imag) : cplx(m_kz, 0.0);
      const SpectralPoint pt{{m_kx, m_ky}, kz, parse_side(m_side), parse_pol(m_pol)};
      const ModeStructure ms = mode_structure(m, pt);
      std::string out = "z,fx_re,fx_im,fy_re,fy_im,fz_re,fz_im\n";
      for (double z : linspace(m_zmin, m_zmax, m_count)) {
        const Vector3c f = evaluate_profile(ms, z);
        out += num(z) + "," + cplx_cols(f.x()) + "," + cplx_cols(f.y()) + "," +
               cplx_cols(f.z()) + "\n";
      }
      emit(g, out);
      return 0;
    };
  });

  // greens eval
  auto* greens = app.add_subcommand("greens", "electrostatic Green's functions");
  greens->require_subcommand(1);
  auto* greens_eval =
      greens->add_subcommand("eval", "G and grad grad' G along a segment (CSV)");
  double gr_n = 1.5;
  std::string gr_variant = "Full";
  std::vector<double> gr_src{0.0, 0.0, 1.0}, gr_from{0.0, 0.0, -2.0},
      gr_to{0.0, 0.0, 3.0};
  int gr_count = 51;
  greens_eval->add_option("--n", gr_n, "refractive index")->required();
  greens_eval->add_option("--variant", gr_variant,
                          "Free, Reflected, Transmitted or Full");
  greens_eval->add_option("--source", gr_src, "source point x,y,z (z > 0)")
      ->delimiter(',');
  greens_eval->add_option("--from", gr_from, "segment start x,y,z")->delimiter(',');
  greens_eval->add_option("--to", gr_to, "segment end x,y,z")->delimiter(',');
  greens_eval->add_option("--count", gr_count, "number of points");
  greens_eval->callback([&] {
    action = [&] {
      const Medium m(gr_n);
      const GreenVariant v = parse_variant(gr_variant);
      const Eigen::Vector3d src = vec3(gr_src, "--source");
      const Eigen::Vector3d a = vec3(gr_from, "--from");
      const Eigen::Vector3d b = vec3(gr_to, "--to");
      std::string out = "s,x,y,z,G,Txx,Txy,Txz,Tyx,Tyy,Tyz,Tzx,Tzy,Tzz\n";
      for (double s : linspace(0.0, 1.0, gr_count)) {
        const PointPair p{a + s * (b - a), src};
        out += num(s) + "," + num(p.r.x()) + "," + num(p.r.y()) + "," +
               num(p.r.z());
        if ((p.r - src).norm() == 0.0) {
          out += std::string(10, ',') + "\n";
          continue;
        }
        out += "," + num(electrostatic_green(m, v, p));
        const Eigen::Matrix3d t = grad_grad_green_tensor(m, v, p);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) out += "," + num(t(i, j));
        }
        out += "\n";
      }
      emit(g, out);
      return 0;
    };
  });

  // kernel verify
  auto* kernel = app.add_subcommand("kernel", "equal-time commutator kernels");
  kernel->require_subcommand(1);
  auto* kernel_verify = kernel->add_subcommand(
      "verify", "assembled kernels against closed forms (reports)");
  std::string k_kind, k_points;
  double k_n = 1.5;
  kernel_verify->add_option("--kind", k_kind,
                            "GeneralizedDelta, GaugeDifference, TrueCoulomb or "
                            "PerfectReflector")
      ->required();
  kernel_verify->add_option("--n", k_n, "refractive index")->required();
  kernel_verify->add_option("--points", k_points, "CSV of x,y,z,xp,yp,zp")
      ->required();
  kernel_verify->callback([&] {
    action = [&] {
      const RunConfig cfg = run_config(g);
      KernelKind kind;
      try {
        kind = kernel_kind_from_string(k_kind);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto pairs = read_points(k_points);
      return emit_reports(g, verify_kernel_points(Medium(k_n), kind, pairs, cfg));
    };
  });

  // energy shift / sweep
  auto* energy = app.add_subcommand("energy", "electrostatic energy shifts");
  energy->require_subcommand(1);
  auto* shift = energy->add_subcommand("shift", "second-order shift (JSON)");
  double e_n = 2.0, e_z0 = 1.0, e_q = 1.0;
  shift->add_option("--n", e_n, "refractive index")->required();
  shift->add_option("--z0", e_z0, "charge height")->required();
  shift->add_option("--q", e_q, "charge");
  shift->callback([&] {
    action = [&] {
      const RunConfig cfg = run_config(g);
      const ShiftResult s = second_order_shift(e_q, Medium(e_n), e_z0, cfg.quad);
      emit(g, shift_json(s, e_n, e_z0, e_q).dump(2) + "\n");
      return 0;
    };
  });
  auto* sweep = energy->add_subcommand("sweep", "shifts over an (n, z0) grid (CSV)");
  std::vector<double> s_n{1.5, 2.0, 4.0}, s_z0{0.5, 1.0, 2.0};
  double s_q = 1.0;
  sweep->add_option("--n", s_n, "refractive indices")->delimiter(',');
  sweep->add_option("--z0", s_z0, "charge heights")->delimiter(',');
  sweep->add_option("--q", s_q, "charge");
  sweep->callback([&] {
    action = [&] {
      const RunConfig cfg = run_config(g);
      std::string out =
          "n,z0,q,delta_e,v_es,ratio,expected_ratio,left_contribution,"
          "right_contribution,error_estimate\n";
      for (double n : s_n) {
        for (double z0 : s_z0) {
          const ShiftResult s = second_order_shift(s_q, Medium(n), z0, cfg.quad);
          out += num(n) + "," + num(z0) + "," + num(s_q) + "," + num(s.delta_e) +
                 "," + num(s.v_es) + "," + num(s.ratio) + "," +
                 num(s.expected_ratio) + "," + num(s.left_contribution) + "," +
                 num(s.right_contribution) + "," + num(s.error_estimate) + "\n";
        }
      }
      emit(g, out);
      return 0;
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "run acceptance suites (reports)");
  std::string v_suite = "all";
  verify->add_option("--suite", v_suite, "fresnel, modes, kernels, energy or all")
      ->check(CLI::IsMember({"fresnel", "modes", "kernels", "energy", "all"}));
  verify->callback([&] {
    action = [&] {
      const RunConfig cfg = run_config(g);
      return emit_reports(g, run_verification_suite(suite_from_string(v_suite), cfg));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  try {
    return action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
