#include "sgi/experiments.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sgi {

namespace {

std::string format_si(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double omega0_of(const ResolvedConfig& rc) {
  return libration_frequency(rc.field.b0, rc.nd, rc.nv);
}

PhaseState ideal_start(const ResolvedConfig& rc) {
  PhaseState s;
  s.theta = rc.field.theta0 - rc.nd.nv_angle;  // NV axis along the bias
  return s;
}

}  // namespace

std::pair<AngularSchedule, AngularSchedule> trajectory_schedules(const ResolvedConfig& rc,
                                                                 int subdivisions) {
  const double a_mag = rc.nv.mu * rc.field.b_grad / rc.nd.mass;
  const auto build = [&](const std::vector<SpinSegment>& segs) {
    AngularSchedule out;
    double xi = 0.0, vxi = 0.0, t = 0.0;
    for (const auto& seg : segs) {
      const double acc = -spin_p(seg.spin) * a_mag + rc.field.g_xi;
      const int n = std::max(1, static_cast<int>(std::lround(
                                     subdivisions * seg.duration / rc.seq.t_pulse)));
      const double dt = seg.duration / n;
      for (int i = 0; i < n; ++i) {
        const double b_nv = rc.field.bias_at(t) +
                            (xi + 4.0 * rc.nd.nv_distance) * rc.field.b_grad;
        out.push_back({seg.spin, dt,
                       std::sqrt(rc.nv.mu * std::abs(b_nv) / rc.nd.inertia)});
        xi += vxi * dt + 0.5 * acc * dt * dt;
        vxi += acc * dt;
        t += dt;
      }
    }
    return out;
  };
  return {build(rc.seq.arm1), build(rc.seq.arm2)};
}

AngularStats preparation_stats(const ResolvedConfig& rc) {
  if (rc.ground_state_prep) return ground_state_stats(omega0_of(rc), rc.nd);
  return thermal_stats(rc.temperature, rc.field.b0, rc.nd, rc.nv);
}

PhaseUncertainty dphi_analytic(const ResolvedConfig& rc) {
  const auto [arm1, arm2] = trajectory_schedules(rc, rc.schedule_subdivisions);
  const AngularStats stats = preparation_stats(rc);
  const QuadraticForm q =
      sequence_phase_form(arm1, arm2, rc.nd, std::max(stats.d_theta, 1e-9),
                          std::max(stats.d_theta_dot, 1e-3));
  return phase_stats_from_form(q, stats);
}

StencilUncertainty dphi_stencil(const ResolvedConfig& rc, int steps_per_pulse) {
  const AngularStats stats = preparation_stats(rc);
  const double sx = std::max(stats.d_theta, 1e-9);
  const double sv = std::max(stats.d_theta_dot, 1e-3);

  const auto phi = [&](double dth, double dthdot) {
    PhaseState s = ideal_start(rc);
    s.theta += dth;
    s.theta_dot = dthdot;
    return run_sgi(s, rc.seq, rc.nd, rc.nv, rc.field, rc.opts, steps_per_pulse, 0).delta_phi;
  };

  const double f00 = phi(0.0, 0.0);
  const double fp0 = phi(sx, 0.0), fm0 = phi(-sx, 0.0);
  const double f0p = phi(0.0, sv), f0m = phi(0.0, -sv);
  const double fpp = phi(sx, sv), fmm = phi(-sx, -sv);

  // scaled-unit gradient and Hessian of the (quadratic) phase surface
  const double gx = 0.5 * (fp0 - fm0);
  const double gv = 0.5 * (f0p - f0m);
  const double hxx = fp0 - 2.0 * f00 + fm0;
  const double hvv = f0p - 2.0 * f00 + f0m;
  const double hxv = 0.5 * (fpp + fmm - 2.0 * f00 - hxx - hvv);

  StencilUncertainty u;
  u.phi_center = f00;
  u.mean_shift = 0.5 * (hxx + hvv);
  const double var = gx * gx + gv * gv + 0.5 * hxx * hxx + 0.5 * hvv * hvv + hxv * hxv;
  u.std_dev = std::sqrt(var);
  u.rms = std::sqrt(var + u.mean_shift * u.mean_shift);
  return u;
}

void SweepSpec::validate() const {
  static const std::vector<std::string> allowed = {"theta0", "omega_T", "b0",
                                                   "b_grad", "g_xi", "d", "t_theta"};
  bool ok = false;
  for (const auto& v : allowed) ok = ok || v == variable;
  if (!ok) throw ConfigError("sweep variable '" + variable + "' not recognized");
  if (n_points < 2) throw ConfigError("sweep needs n_points >= 2");
  if (!(min < max)) throw ConfigError("sweep needs min < max");
  if (log_scale && min <= 0.0) throw ConfigError("log sweep needs min > 0");
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double f = static_cast<double>(i) / (n_points - 1);
    g[i] = log_scale ? min * std::pow(max / min, f) : min + f * (max - min);
  }
  return g;
}

void apply_sweep_variable(Config& cfg, const std::string& variable, double value) {
  if (variable == "theta0") cfg.set("field", "theta0", format_si(value) + " rad");
  else if (variable == "b0") cfg.set("field", "b0", format_si(value) + " T");
  else if (variable == "b_grad") cfg.set("field", "b_grad", format_si(value) + " T/m");
  else if (variable == "g_xi") cfg.set("field", "g_xi", format_si(value) + " m/s2");
  else if (variable == "d") cfg.set("nd", "nv_distance", format_si(value) + " m");
  else if (variable == "t_theta") cfg.set("environment", "temperature", format_si(value) + " K");
  else if (variable == "omega_T") {
    // realized by scaling the pulse duration at the configured bias field
    const ResolvedConfig rc = cfg.resolve();
    const double omega0 = omega0_of(rc);
    cfg.set("sequence", "t_pulse", format_si(value / omega0) + " s");
  } else {
    throw ConfigError("sweep variable '" + variable + "' not recognized");
  }
}

void Table::write_csv(std::ostream& out) const {
  CsvWriter w(out);
  for (const auto& c : comments) w.comment(c);
  w.header(columns);
  for (const auto& r : rows) w.row(r);
}

namespace {

void provenance_comments(Table& t, const ResolvedConfig& rc, std::uint64_t seed) {
  t.comments.push_back("sgi version = " + std::string(version_string));
  t.comments.push_back("generated = " + timestamp_utc());
  t.comments.push_back("seed = " + std::to_string(seed));
  t.comments.push_back("resolved " + resolved_config_json(rc));
}

// run the worker pool over [0, n) preserving output slot order
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct PointOutputs {
  std::vector<double> values;
  std::string error;
};

// shared column set for the generic sweep
const std::vector<std::string> generic_columns = {
    "omega0 [rad/s]",      "omega_T",
    "delta_phi_run [rad]", "phi_separation [rad]",
    "zeta_xi_ratio",       "dphi_mean [rad]",
    "dphi_std [rad]",      "dphi_rms [rad]",
    "dphi_rms_stencil [rad]", "c_semiclassical_gs",
    "c_width_overlap"};

PointOutputs generic_point(const Config& point_cfg) {
  PointOutputs out;
  try {
    const ResolvedConfig rc = point_cfg.resolve();
    const double omega0 = omega0_of(rc);
    const double omega_t = omega0 * rc.seq.t_pulse;

    const SgiResult run = run_sgi(ideal_start(rc), rc.seq, rc.nd, rc.nv, rc.field, rc.opts,
                                  std::min(rc.steps_per_pulse, 500), 8);
    const AxisExtents e1 = xi_zeta_extents(run.arm1, rc.field.theta0);
    const AxisExtents e2 = xi_zeta_extents(run.arm2, rc.field.theta0);
    const double xi_max = std::max(e1.xi_max, e2.xi_max);
    const double zeta_max = std::max(e1.zeta_max, e2.zeta_max);

    const PhaseUncertainty pu = dphi_analytic(rc);
    const StencilUncertainty su = dphi_stencil(rc, std::min(rc.steps_per_pulse, 500));
    const double c_width = sgi_width_coherence(omega0, rc.seq.t_pulse, rc.nd, 2000).c_theta;

    out.values = {omega0,
                  omega_t,
                  run.delta_phi,
                  run.phi_separation,
                  xi_max > 0.0 ? zeta_max / xi_max : 0.0,
                  pu.mean,
                  pu.std_dev,
                  pu.rms,
                  su.rms,
                  semiclassical_coherence_gs(omega_t),
                  c_width};
  } catch (const std::exception& ex) {
    out.error = ex.what();
  }
  return out;
}

}  // namespace

Table sweep_table(const Config& base, const SweepSpec& spec, int threads, std::uint64_t seed) {
  spec.validate();
  const std::vector<double> grid = spec.grid();
  const int n = static_cast<int>(grid.size());

  std::vector<PointOutputs> results(n);
  parallel_for(n, threads, [&](int i) {
    Config point = base;
    try {
      apply_sweep_variable(point, spec.variable, grid[i]);
      results[i] = generic_point(point);
    } catch (const std::exception& ex) {
      results[i].error = ex.what();
    }
  });

  Table t;
  provenance_comments(t, base.resolve(), seed);
  t.comments.push_back("sweep variable = " + spec.variable);
  t.columns.push_back(spec.variable);
  for (const auto& c : generic_columns) t.columns.push_back(c);
  t.columns.push_back("seed");
  t.columns.push_back("error");
  for (int i = 0; i < n; ++i) {
    std::vector<CsvValue> row;
    row.push_back(grid[i]);
    if (results[i].error.empty()) {
      for (double v : results[i].values) row.push_back(v);
    } else {
      for (std::size_t k = 0; k < generic_columns.size(); ++k) row.push_back(std::string("nan"));
    }
    row.push_back(static_cast<long>(seed ^ static_cast<std::uint64_t>(i)));
    row.push_back(results[i].error);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table trajectory_table(const ResolvedConfig& rc, int stride) {
  const SgiResult run = run_sgi(ideal_start(rc), rc.seq, rc.nd, rc.nv, rc.field, rc.opts,
                                rc.steps_per_pulse, std::max(1, stride));
  Table t;
  provenance_comments(t, rc, rc.seed);
  t.columns = {"t [s]", "arm", "x [m]", "y [m]", "theta [rad]", "vx [m/s]", "vy [m/s]",
               "theta_dot [rad/s]", "xi [m]", "zeta [m]"};
  const auto emit = [&](const Trajectory& tr, long arm) {
    for (const auto& s : tr.samples) {
      const auto [xi, zeta] = to_xi_zeta(s.state.x, s.state.y, rc.field.theta0);
      t.rows.push_back({s.t, arm, s.state.x, s.state.y, s.state.theta, s.state.vx,
                        s.state.vy, s.state.theta_dot, xi, zeta});
    }
  };
  emit(run.arm1, 1);
  emit(run.arm2, 2);
  return t;
}

namespace {

// --- named experiments ---------------------------------------------------

Table fig3_table(const Config& base, std::uint64_t seed) {
  Table t;
  Config cfg = base;
  cfg.set("nd", "nv_distance", "1 nm");
  cfg.set("nd", "nv_angle", "45 deg");
  cfg.set("field", "b0", "10 G");
  cfg.set("field", "b_grad", "0.2 G/nm");
  provenance_comments(t, cfg.resolve(), seed);
  t.comments.push_back("case a: theta0 = alpha/2; case b: theta0 = 0; both start 10 mrad off");
  t.columns = {"case", "t [s]", "arm", "theta_prime [rad]", "x [m]", "y [m]", "xi [m]",
               "zeta [m]"};

  const auto emit = [&](const std::string& label, double theta0) {
    Config c = cfg;
    c.set("field", "theta0", format_si(theta0) + " rad");
    const ResolvedConfig rc = c.resolve();
    PhaseState s0 = ideal_start(rc);
    s0.theta += 10e-3;  // initial angle theta' = theta0 + 10 mrad
    const SgiResult run =
        run_sgi(s0, rc.seq, rc.nd, rc.nv, rc.field, rc.opts, rc.steps_per_pulse, 50);
    const auto rows = [&](const Trajectory& tr, long arm) {
      for (const auto& s : tr.samples) {
        const auto [xi, zeta] = to_xi_zeta(s.state.x, s.state.y, rc.field.theta0);
        t.rows.push_back({label, s.t, arm, s.state.theta + rc.nd.nv_angle, s.state.x,
                          s.state.y, xi, zeta});
      }
    };
    rows(run.arm1, 1);
    rows(run.arm2, 2);
  };
  const double alpha = constants::pi / 4.0;
  emit("a", alpha / 2.0);
  emit("b", 0.0);
  return t;
}

Table fig4_table(const Config& base, const std::optional<SweepSpec>& range, int threads,
                 std::uint64_t seed) {
  const double alpha = constants::pi / 4.0;
  SweepSpec spec{"theta0", -alpha, alpha, 101, false};
  if (range) spec = *range;
  spec.validate();

  Config cfg = base;
  cfg.set("nd", "nv_angle", "45 deg");
  cfg.set("field", "b0", "10 G");
  cfg.set("field", "b_grad", "0.2 G/nm");
  cfg.set("field", "g_xi", "0 m/s2");

  const std::vector<double> dvals = {1e-9, 2e-9, 3e-9};
  const std::vector<double> grid = spec.grid();
  const int n = static_cast<int>(grid.size());
  std::vector<std::array<double, 3>> res(n);
  std::vector<std::string> errs(n);

  parallel_for(n, threads, [&](int i) {
    try {
      for (std::size_t k = 0; k < dvals.size(); ++k) {
        Config point = cfg;
        point.set("nd", "nv_distance", format_si(dvals[k]) + " m");
        point.set("field", "theta0", format_si(grid[i]) + " rad");
        const ResolvedConfig rc = point.resolve();
        res[i][k] = dphi_stencil(rc, 1000).rms;
      }
    } catch (const std::exception& ex) {
      errs[i] = ex.what();
    }
  });

  Table t;
  provenance_comments(t, cfg.resolve(), seed);
  t.columns = {"theta0 [rad]", "dphi_rms_d1nm [rad]", "dphi_rms_d2nm [rad]",
               "dphi_rms_d3nm [rad]", "error"};
  for (int i = 0; i < n; ++i)
    t.rows.push_back({grid[i], res[i][0], res[i][1], res[i][2], errs[i]});
  return t;
}

Table fig56_table(const Config& base, const std::optional<SweepSpec>& range, int threads,
                  std::uint64_t seed, bool fig6) {
  SweepSpec spec{"omega_T", 0.05, 4.0 * constants::pi, 200, false};
  if (range) spec = *range;
  spec.validate();

  Config cfg = base;
  cfg.set("field", "b_grad", "0 T/m");  // no spatial dynamics in figs 5/6
  cfg.set("nd", "nv_distance", "0 nm");
  const ResolvedConfig rc0 = cfg.resolve();
  const double omega0 = omega0_of(rc0);

  const std::vector<double> grid = spec.grid();
  const int n = static_cast<int>(grid.size());
  std::vector<std::array<double, 2>> res(n);
  std::vector<std::string> errs(n);

  parallel_for(n, threads, [&](int i) {
    try {
      const double wt = grid[i];
      if (fig6) {
        const PhaseUncertainty pu =
            phase_uncertainty(ground_state_stats(omega0, rc0.nd), omega0, wt / omega0, rc0.nd);
        res[i] = {pu.rms, std::exp(-0.5 * pu.rms * pu.rms)};
      } else {
        res[i] = {sgi_width_coherence(omega0, wt / omega0, rc0.nd, 2000).c_theta,
                  semiclassical_coherence_gs(wt)};
      }
    } catch (const std::exception& ex) {
      errs[i] = ex.what();
    }
  });

  Table t;
  provenance_comments(t, rc0, seed);
  t.columns = fig6 ? std::vector<std::string>{"omega_T", "dphi_gs_rms [rad]",
                                              "coherence_exp(-dphi^2/2)", "error"}
                   : std::vector<std::string>{"omega_T", "c_width_overlap",
                                              "c_semiclassical_gs", "error"};
  for (int i = 0; i < n; ++i) t.rows.push_back({grid[i], res[i][0], res[i][1], errs[i]});
  return t;
}

// dphi vs a swept variable, with one column per (override-set) case
Table multi_case_table(const Config& base, const SweepSpec& spec,
                       const std::vector<std::pair<std::string, Config>>& cases, int threads,
                       std::uint64_t seed, const char* varname,
                       const std::vector<std::string>& extra_cols = {},
                       const std::function<double(double)>& extra_fn = {}) {
  const std::vector<double> grid = spec.grid();
  const int n = static_cast<int>(grid.size());
  std::vector<std::vector<double>> res(n, std::vector<double>(cases.size() + extra_cols.size()));
  std::vector<std::string> errs(n);

  parallel_for(n, threads, [&](int i) {
    try {
      for (std::size_t k = 0; k < cases.size(); ++k) {
        Config point = cases[k].second;
        apply_sweep_variable(point, spec.variable, grid[i]);
        res[i][k] = dphi_analytic(point.resolve()).rms;
      }
      for (std::size_t k = 0; k < extra_cols.size(); ++k)
        res[i][cases.size() + k] = extra_fn(grid[i]);
    } catch (const std::exception& ex) {
      errs[i] = ex.what();
    }
  });

  Table t;
  provenance_comments(t, base.resolve(), seed);
  t.columns.push_back(varname);
  for (const auto& c : cases) t.columns.push_back("dphi_rms_" + c.first + " [rad]");
  for (const auto& c : extra_cols) t.columns.push_back(c);
  t.columns.push_back("error");
  for (int i = 0; i < n; ++i) {
    std::vector<CsvValue> row{grid[i]};
    for (double v : res[i]) row.push_back(v);
    row.push_back(errs[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Config with(const Config& base, std::initializer_list<std::array<const char*, 3>> sets) {
  Config c = base;
  for (const auto& s : sets) c.set(s[0], s[1], s[2]);
  return c;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

Table experiment_table(const std::string& name, const Config& base,
                       const std::optional<SweepSpec>& range, int threads,
                       std::uint64_t seed) {
  using constants::gauss;
  using constants::gauss_per_nm;

  if (name == "fig3") return fig3_table(base, seed);
  if (name == "fig4") return fig4_table(base, range, threads, seed);
  if (name == "fig5") return fig56_table(base, range, threads, seed, false);
  if (name == "fig6") return fig56_table(base, range, threads, seed, true);

  if (name == "fig7") {
    SweepSpec spec{"b0", 1.0 * gauss, 40.0 * gauss, 40, false};
    if (range) spec = *range;
    spec.validate();
    Config cfg = with(base, {{"nd", "nv_distance", "0 nm"},
                             {"field", "g_xi", "0 m/s2"},
                             {"field", "theta0", "auto"}});
    std::vector<std::pair<std::string, Config>> cases = {
        {"Bgrad0.05Gnm", with(cfg, {{"field", "b_grad", "0.05 G/nm"}})},
        {"Bgrad0.1Gnm", with(cfg, {{"field", "b_grad", "0.1 G/nm"}})},
        {"Bgrad0.2Gnm", with(cfg, {{"field", "b_grad", "0.2 G/nm"}})}};
    return multi_case_table(cfg, spec, cases, threads, seed, "b0 [T]");
  }

  if (name == "fig8") {
    SweepSpec spec{"g_xi", 0.0, constants::g_earth, 41, false};
    if (range) spec = *range;
    spec.validate();
    Config cfg = with(base, {{"nd", "nv_distance", "3 nm"}, {"field", "b0", "10 G"}});
    std::vector<std::pair<std::string, Config>> cases = {
        {"Bgrad0.05Gnm", with(cfg, {{"field", "b_grad", "0.05 G/nm"}})},
        {"Bgrad0.1Gnm", with(cfg, {{"field", "b_grad", "0.1 G/nm"}})},
        {"Bgrad0.2Gnm", with(cfg, {{"field", "b_grad", "0.2 G/nm"}})}};
    return multi_case_table(cfg, spec, cases, threads, seed, "g_xi [m/s^2]");
  }

  if (name == "fig9") {
    // the quadratic ramp keeps |B| at the mean position at its initial 5 G;
    // the g range keeps the ramped bias positive through the sequence
    SweepSpec spec{"g_xi", 0.0, 4.9, 41, false};
    if (range) spec = *range;
    spec.validate();
    Config cfg = with(base, {{"field", "b0", "5 G"}, {"field", "b_grad", "0.1 G/nm"}});
    std::vector<std::pair<std::string, Config>> cases = {
        {"ramped_d0", with(cfg, {{"field", "ramp", "quadratic"}, {"nd", "nv_distance", "0 nm"}})},
        {"unramped_d0", with(cfg, {{"field", "ramp", "none"}, {"nd", "nv_distance", "0 nm"}})},
        {"ramped_d3nm", with(cfg, {{"field", "ramp", "quadratic"}, {"nd", "nv_distance", "3 nm"}})},
        {"unramped_d3nm", with(cfg, {{"field", "ramp", "none"}, {"nd", "nv_distance", "3 nm"}})}};
    return multi_case_table(cfg, spec, cases, threads, seed, "g_xi [m/s^2]");
  }

  if (name == "fig10") {
    SweepSpec spec{"b_grad", 0.05 * gauss_per_nm, 3.0 * gauss_per_nm, 60, false};
    if (range) spec = *range;
    spec.validate();
    Config cfg = with(base, {{"sequence", "symmetric", "on"},
                             {"field", "b0", "2 G"},
                             {"nd", "nv_distance", "0 nm"}});
    std::vector<std::pair<std::string, Config>> cases = {
        {"g0.5_d0", with(cfg, {{"field", "g_xi", "0.5 m/s2"}})},
        {"g1_d0", with(cfg, {{"field", "g_xi", "1.0 m/s2"}})},
        {"g1.5_d0", with(cfg, {{"field", "g_xi", "1.5 m/s2"}})},
        {"g2_d0", with(cfg, {{"field", "g_xi", "2.0 m/s2"}})},
        {"g1.5_d3nm", with(cfg, {{"field", "g_xi", "1.5 m/s2"},
                                 {"nd", "nv_distance", "3 nm"}})}};
    const ResolvedConfig rc0 = with(cfg, {{"field", "g_xi", "1.5 m/s2"}}).resolve();
    const auto grav_phase = [rc0](double bgrad) {
      // symmetric-configuration 1D phase: da = 2 mu B'/M, a_av = 0
      return phase_1d(2.0 * rc0.nv.mu * bgrad / rc0.nd.mass, 0.0, rc0.field.g_xi,
                      rc0.nd.mass, rc0.seq.t_pulse);
    };
    return multi_case_table(cfg, spec, cases, threads, seed, "b_grad [T/m]",
                            {"dphi_1d_g1.5 [rad]"}, grav_phase);
  }

  throw ConfigError("unknown experiment '" + name + "'");
}

std::string run_summary_json(const ResolvedConfig& rc) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["provenance"]["version"] = version_string;
  j["provenance"]["seed"] = rc.seed;
  j["provenance"]["generated"] = timestamp_utc();
  j["provenance"]["resolved_config"] = nlohmann::json::parse(resolved_config_json(rc));

  const double omega0 = omega0_of(rc);
  const double a_mag = rc.nv.mu * rc.field.b_grad / rc.nd.mass;
  j["derived"]["mass_kg"] = rc.nd.mass;
  j["derived"]["inertia_kg_m2"] = rc.nd.inertia;
  j["derived"]["acceleration_m_s2"] = a_mag;
  j["derived"]["diamagnetic_accel_per_gauss_m_s2"] =
      std::abs(rc.nd.chi()) / (constants::mu0 * rc.nd.mass) * rc.field.b_grad *
      constants::gauss;
  j["derived"]["omega_rad_s"] = omega0;
  j["derived"]["omega_over_2pi_hz"] = omega0 / constants::two_pi;
  j["derived"]["omega_T"] = omega0 * rc.seq.t_pulse;
  j["derived"]["ground_state_energy_nk"] =
      constants::hbar * omega0 / (2.0 * constants::boltzmann) * 1e9;

  const AngularStats stats = preparation_stats(rc);
  j["preparation"]["source"] = stats.source == StatsSource::ground_state ? "ground" : "thermal";
  j["preparation"]["d_theta_rad"] = stats.d_theta;
  j["preparation"]["d_theta_dot_rad_s"] = stats.d_theta_dot;
  for (const auto& w : angular_prep_warnings(stats, rc.tau_c))
    j["preparation"]["warnings"].push_back(w);
  if (rc.seq.symmetric && !plus_propagator_valid(omega0 * rc.seq.t_pulse))
    j["preparation"]["warnings"].push_back(
        "symmetric configuration with omega*T > 0.3: the |+> linearization is out of "
        "its validity range");

  const SgiResult run = run_sgi(ideal_start(rc), rc.seq, rc.nd, rc.nv, rc.field, rc.opts,
                                rc.steps_per_pulse, 16);
  const AxisExtents e1 = xi_zeta_extents(run.arm1, rc.field.theta0);
  const AxisExtents e2 = xi_zeta_extents(run.arm2, rc.field.theta0);
  j["run"]["delta_phi_rad"] = run.delta_phi;
  j["run"]["phi_action_rad"] = run.phi_action;
  j["run"]["phi_separation_rad"] = run.phi_separation;
  j["run"]["action1_J_s"] = run.arm1.action;
  j["run"]["action2_J_s"] = run.arm2.action;
  j["run"]["xi_max_m"] = std::max(e1.xi_max, e2.xi_max);
  j["run"]["zeta_max_m"] = std::max(e1.zeta_max, e2.zeta_max);
  const double xi_max = std::max(e1.xi_max, e2.xi_max);
  j["run"]["zeta_xi_ratio"] = xi_max > 0.0 ? std::max(e1.zeta_max, e2.zeta_max) / xi_max : 0.0;

  const MismatchResult mm = recombination_mismatch(omega0, rc.seq.t_pulse, stats, rc.nd);
  j["analytics"]["mismatch_a"] = mm.a_coeff;
  j["analytics"]["mismatch_b"] = mm.b_coeff;
  j["analytics"]["delta_theta_out_rad"] = mm.delta_theta;
  j["analytics"]["delta_theta_dot_out_rad_s"] = mm.delta_theta_dot;
  j["analytics"]["coherence_length_lc_rad"] = mm.l_c;

  const PhaseUncertainty pu = dphi_analytic(rc);
  j["analytics"]["dphi_mean_rad"] = pu.mean;
  j["analytics"]["dphi_std_rad"] = pu.std_dev;
  j["analytics"]["dphi_rms_rad"] = pu.rms;
  j["analytics"]["dphi_rms_as_printed_rad"] =
      phase_uncertainty_as_printed(stats, omega0, rc.seq.t_pulse, rc.nd);
  if (rc.mc_samples >= 2) {
    const auto [arm1, arm2] = trajectory_schedules(rc, rc.schedule_subdivisions);
    const QuadraticForm q = sequence_phase_form(arm1, arm2, rc.nd,
                                                std::max(stats.d_theta, 1e-9),
                                                std::max(stats.d_theta_dot, 1e-3));
    const McPhaseUncertainty mc = phase_form_mc(q, stats, rc.mc_samples, rc.seed);
    j["analytics"]["dphi_mc_rms_rad"] = mc.rms;
    j["analytics"]["dphi_mc_rms_stderr_rad"] = mc.rms_err;
    j["analytics"]["dphi_mc_std_rad"] = mc.std_dev;
  }

  const StencilUncertainty su = dphi_stencil(rc, std::min(rc.steps_per_pulse, 1000));
  j["analytics"]["dphi_rms_stencil_rad"] = su.rms;
  j["analytics"]["dphi_std_stencil_rad"] = su.std_dev;

  const double c_semi = semiclassical_coherence_gs(omega0 * rc.seq.t_pulse);
  const double c_width = sgi_width_coherence(omega0, rc.seq.t_pulse, rc.nd, 2000).c_theta;
  j["coherence"]["semiclassical_gs"] = c_semi;
  j["coherence"]["width_overlap"] = c_width;
  j["coherence"]["combined_heuristic"] = c_semi * c_width;  // product of the two estimates

  return j.dump(2);
}

}  // namespace sgi
