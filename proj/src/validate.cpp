#include "sgi/validate.hpp"

#include <cmath>
#include <random>

#include "sgi/angular_analytics.hpp"
#include "sgi/constants.hpp"
#include "sgi/nv_spin.hpp"
#include "sgi/rk4.hpp"

namespace sgi {

namespace {

using constants::gauss;
using constants::pi;

NDParams test_nd() { return NDParams::make(25e-9, 3510.0, 1e-9, pi / 4.0); }

double rel(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace

OracleResult check_adiabatic_vs_exact(const OracleOptions& opt) {
  OracleResult r{"adiabatic energies vs exact 3x3 diagonalization", false, 0.0, 1e-3, ""};
  const NVParams nv;  // |eps| = h * 5 MHz
  const int n = opt.quick ? 25 : 100;
  const double b_max = 10.0 * gauss;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      LocalField f;
      f.b_par = -b_max + 2.0 * b_max * i / (n - 1);
      f.b_perp = b_max * k / (n - 1);
      if (std::hypot(f.b_par, f.b_perp) > b_max) continue;
      const EnergyLevels lv = adiabatic_energies(f, nv);
      const auto exact = exact_hamiltonian_eigvals(f, nv);
      std::array<double, 3> adia{-nv.zero_field_splitting + lv.de_zero, lv.e_minus, lv.e_plus};
      std::sort(adia.begin(), adia.end());
      for (int m = 0; m < 3; ++m)
        r.worst = std::max(r.worst, std::abs(adia[m] - exact[m]) / std::abs(exact[m]));
    }
  }
  r.pass = r.worst < r.tolerance;
  r.detail = "grid " + std::to_string(n) + "x" + std::to_string(n) + ", |B| <= 10 G";
  return r;
}

OracleResult check_propagators_vs_integration(const OracleOptions& opt) {
  OracleResult r{"analytic propagators vs RK4 integration", false, 0.0, 1e-8, ""};
  const int n_wt = opt.quick ? 4 : 16;
  const long steps = opt.quick ? 20000 : 40000;

  for (int i = 0; i < n_wt; ++i) {
    const double wt = 0.25 + (4.0 * pi - 0.25) * i / (n_wt - 1);
    const double omega = 1.8e4;
    const double t = wt / omega;
    for (SpinLabel spin : {SpinLabel::minus, SpinLabel::zero, SpinLabel::plus}) {
      if (spin == SpinLabel::plus && wt > 2.0) continue;  // keep cosh within range
      const double w2 = (spin == SpinLabel::minus)  ? omega * omega
                        : (spin == SpinLabel::plus) ? -omega * omega
                                                    : 0.0;
      const Mat2 u = evolution_matrix(spin, t, omega);
      // columns from basis initial conditions (1, 0) and (0, omega)
      for (int col = 0; col < 2; ++col) {
        StateVec<2> y{col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : omega};
        const double h = t / steps;
        for (long s = 0; s < steps; ++s)
          y = rk4_step(y, s * h, h,
                       [&](const StateVec<2>& st, double) {
                         return StateVec<2>{st[1], -w2 * st[0]};
                       });
        const double scale = col == 0 ? 1.0 : omega;
        const double ref0 = col == 0 ? u.a : u.b * omega;
        const double ref1 = col == 0 ? u.c : u.d * omega;
        r.worst = std::max(r.worst, std::abs(y[0] - ref0) / std::max(scale, std::abs(ref0)));
        r.worst = std::max(r.worst,
                           std::abs(y[1] - ref1) / std::max(scale * omega, std::abs(ref1)));
      }
    }
  }
  r.pass = r.worst < r.tolerance;
  r.detail = "U0/U-/U+ columns vs direct integration of the linearized equation";
  return r;
}

OracleResult check_mismatch_vs_matrices(const OracleOptions& opt) {
  OracleResult r{"mismatch coefficients (a,b) vs U1-U2 matrix products", false, 0.0, 1e-12, ""};
  const int n = opt.quick ? 100 : 1000;
  for (int i = 1; i <= n; ++i) {
    const double wt = 4.0 * pi * i / n;
    const double omega = 1.0;  // entries compared in dimensionless form
    const auto [u1, u2] = arm_matrices(wt / omega, omega);
    const MismatchCoeffs ab = mismatch_coeffs(wt);
    const double scale = std::max(1.0, wt * wt);
    r.worst = std::max(r.worst, std::abs(u1.a - u2.a) / scale);
    r.worst = std::max(r.worst, std::abs(u1.d - u2.d) / scale);
    r.worst = std::max(r.worst, std::abs((u1.b - u2.b) - ab.a / omega) / scale);
    r.worst = std::max(r.worst, std::abs((u1.c - u2.c) - omega * ab.b) / scale);
  }
  r.pass = r.worst < r.tolerance;
  r.detail = std::to_string(n) + " points over omega T in (0, 4 pi]";
  return r;
}

OracleResult check_angular_phase_vs_segments(const OracleOptions& opt) {
  OracleResult r{"angular phase closed form vs composed segment phases", false, 0.0, 1e-10, ""};
  const NDParams nd = test_nd();
  const int n = opt.quick ? 50 : 200;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int done = 0;
  while (done < n) {
    const double wt = 0.1 + (4.0 * pi - 0.1) * u01(rng);
    if (std::abs(wt - pi * std::round(wt / pi)) < 0.05) continue;  // poles of relative error
    const double omega = 1.8e4;
    const double t = wt / omega;
    const double x = (2.0 * u01(rng) - 1.0) * 0.02;
    const double v = (2.0 * u01(rng) - 1.0) * 300.0;
    const auto [arm1, arm2] = standard_schedules(t, omega, false);
    const double composed = sequence_phase(arm1, arm2, nd, x, v);
    const double closed = angular_phase(x, v, omega, t, nd);
    r.worst = std::max(r.worst, rel(closed, composed, 1e-9));
    ++done;
  }
  r.pass = r.worst < r.tolerance;
  r.detail = std::to_string(n) + " random (theta, theta_dot, omega T) draws";
  return r;
}

OracleResult check_torque_finite_difference(const TorqueFn& fn, const OracleOptions& opt) {
  OracleResult r{"dBpar/dtheta vs central finite difference", false, 0.0, 1e-6, ""};
  const NDParams base = test_nd();
  const int n = opt.quick ? 50 : 200;
  const double step = 1e-6;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    NDParams nd = base;
    nd.nv_distance = 3e-9 * u01(rng);
    nd.nv_angle = 2.0 * pi * u01(rng);
    FieldConfig cfg;
    cfg.b0 = (2.0 + 18.0 * u01(rng)) * gauss;
    cfg.theta0 = 2.0 * pi * u01(rng);
    cfg.b_grad = (0.05 + 0.4 * u01(rng)) * constants::gauss_per_nm;
    Pose p;
    p.x = (2.0 * u01(rng) - 1.0) * 20e-9;
    p.y = (2.0 * u01(rng) - 1.0) * 20e-9;
    p.theta = 2.0 * pi * u01(rng);
    Pose hi = p, lo = p;
    hi.theta += step;
    lo.theta -= step;
    const double fd = (b_parallel_at_nv(hi, nd, cfg, 0.0) -
                       b_parallel_at_nv(lo, nd, cfg, 0.0)) / (2.0 * step);
    r.worst = std::max(r.worst, rel(fn(p, nd, cfg, 0.0), fd, 1e-9));
  }
  r.pass = r.worst < r.tolerance;
  r.detail = std::to_string(n) + " random poses, step 1e-6 rad";
  return r;
}

OracleResult check_phase_uncertainty_vs_mc(const OracleOptions& opt) {
  OracleResult r{"closed-form phase uncertainty vs Monte Carlo", false, 0.0, 3.0, ""};
  const NDParams nd = test_nd();
  const int draws = opt.quick ? 5 : 20;
  const std::size_t samples = opt.quick ? 20000 : 1000000;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < draws; ++i) {
    const double omega = 1.8e4 * (0.5 + u01(rng));
    const double wt = 0.2 + 3.8 * u01(rng);
    const double t = wt / omega;
    AngularStats gs = ground_state_stats(omega, nd);
    AngularStats stats = gs;
    stats.d_theta *= 0.5 + 1.5 * u01(rng);
    stats.d_theta_dot *= 0.5 + 1.5 * u01(rng);
    const PhaseUncertainty closed = phase_uncertainty(stats, omega, t, nd);
    const McPhaseUncertainty mc =
        phase_uncertainty_mc(stats, omega, t, nd, samples, 1000 + i);
    if (mc.rms_err > 0.0)
      r.worst = std::max(r.worst, std::abs(closed.rms - mc.rms) / mc.rms_err);
    if (mc.std_err > 0.0)
      r.worst = std::max(r.worst, std::abs(closed.std_dev - mc.std_dev) / mc.std_err);
  }
  r.pass = r.worst < r.tolerance;
  r.detail = std::to_string(draws) + " random draws, N = " + std::to_string(samples) +
             "; worst deviation in standard errors";
  return r;
}

std::vector<OracleResult> run_oracle_suite(const OracleOptions& opt) {
  return {
      check_adiabatic_vs_exact(opt),
      check_propagators_vs_integration(opt),
      check_mismatch_vs_matrices(opt),
      check_angular_phase_vs_segments(opt),
      check_torque_finite_difference(
          [](const Pose& p, const NDParams& nd, const FieldConfig& cfg, double t) {
            return dbpar_dtheta(p, nd, cfg, t);
          },
          opt),
      check_phase_uncertainty_vs_mc(opt),
  };
}

}  // namespace sgi
