#include "sgi/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sgi/rk4.hpp"

namespace sgi {

namespace {

double signed_lambda(double b_par, const NVParams& nv, const ModelOptions& opts) {
  if (opts.lambda_mode == LambdaMode::unity) return 1.0;
  const double zb = nv.mu * b_par;
  const double denom = std::sqrt(zb * zb + nv.epsilon * nv.epsilon);
  return denom == 0.0 ? 0.0 : zb / denom;
}

// Spin-state potential with the zero of energy at B = 0 for each state.
double spin_potential(const PhaseState& s, SpinLabel spin, const NDParams& nd,
                      const NVParams& nv, const FieldConfig& cfg,
                      const ModelOptions& opts, double t) {
  const Pose pose{s.x, s.y, s.theta};
  const int p = spin_p(spin);
  const double b_par = b_parallel_at_nv(pose, nd, cfg, t);

  double v = 0.0;
  if (p != 0) {
    if (opts.lambda_mode == LambdaMode::unity) {
      v = p * nv.mu * b_par;
    } else {
      const double zb = nv.mu * b_par;
      v = p * (std::sqrt(zb * zb + nv.epsilon * nv.epsilon) - nv.epsilon);
    }
  }
  if (opts.include_perp_shifts) {
    const auto [xp, yp] = nv_position(pose, nd);
    const auto [bx, by] = field_at(xp, yp, cfg, t);
    const auto f = local_field_components(bx, by, s.theta + nd.nv_angle);
    const auto lv = adiabatic_energies(f, nv);
    if (p == +1) v += lv.eta_plus;
    else if (p == -1) v += lv.eta_minus;
    else v += lv.de_zero;
  }
  return v;
}

}  // namespace

SequenceConfig SequenceConfig::standard(double t_pulse, bool symmetric, double t_delay) {
  SequenceConfig seq;
  seq.t_pulse = t_pulse;
  seq.t_delay = t_delay;
  seq.symmetric = symmetric;
  const SpinLabel other = symmetric ? SpinLabel::plus : SpinLabel::zero;
  auto arm = [&](SpinLabel a, SpinLabel b) {
    std::vector<SpinSegment> segs;
    segs.push_back({a, t_pulse});
    if (t_delay > 0.0) segs.push_back({SpinLabel::zero, t_delay});
    segs.push_back({b, 2.0 * t_pulse});
    if (t_delay > 0.0) segs.push_back({SpinLabel::zero, t_delay});
    segs.push_back({a, t_pulse});
    return segs;
  };
  seq.arm1 = arm(SpinLabel::minus, other);
  seq.arm2 = arm(other, SpinLabel::minus);
  return seq;
}

void SequenceConfig::validate() const {
  if (t_pulse <= 0.0) throw std::invalid_argument("SequenceConfig: t_pulse must be > 0");
  if (arm1.empty() || arm2.empty())
    throw std::invalid_argument("SequenceConfig: both arms need at least one segment");
  auto total = [](const std::vector<SpinSegment>& segs) {
    double sum = 0.0;
    for (const auto& s : segs) {
      if (s.duration <= 0.0)
        throw std::invalid_argument("SequenceConfig: segment durations must be > 0");
      sum += s.duration;
    }
    return sum;
  };
  const double d1 = total(arm1), d2 = total(arm2);
  if (std::abs(d1 - d2) > 1e-15 * std::max(d1, d2))
    throw std::invalid_argument("SequenceConfig: arm durations differ");
}

double SequenceConfig::total_duration() const {
  double sum = 0.0;
  for (const auto& s : arm1) sum += s.duration;
  return sum;
}

Accelerations accelerations(const PhaseState& s, SpinLabel spin, const NDParams& nd,
                            const NVParams& nv, const FieldConfig& cfg,
                            const ModelOptions& opts, double t) {
  const Pose pose{s.x, s.y, s.theta};
  const int p = spin_p(spin);
  const double tp = s.theta + nd.nv_angle;

  Accelerations a;
  a.ax = cfg.gx();
  a.ay = cfg.gy();
  if (p != 0) {
    const double lam = signed_lambda(b_parallel_at_nv(pose, nd, cfg, t), nv, opts);
    const double f = p * lam * nv.mu * cfg.b_grad / nd.mass;
    a.ax += -f * std::cos(tp);
    a.ay += +f * std::sin(tp);
    a.atheta = -p * lam * nv.mu / nd.inertia * dbpar_dtheta(pose, nd, cfg, t);
  }
  if (nd.diamagnetic_enabled) {
    const auto [bx, by] = field_at(s.x, s.y, cfg, t);
    const double k = nd.chi() / (constants::mu0 * nd.mass) * cfg.b_grad;
    a.ax += k * bx;
    a.ay += -k * by;
  }
  return a;
}

double lagrangian(const PhaseState& s, SpinLabel spin, const NDParams& nd,
                  const NVParams& nv, const FieldConfig& cfg,
                  const ModelOptions& opts, double t) {
  double l = 0.5 * nd.mass * (s.vx * s.vx + s.vy * s.vy) +
             0.5 * nd.inertia * s.theta_dot * s.theta_dot -
             spin_potential(s, spin, nd, nv, cfg, opts, t) +
             nd.mass * (cfg.gx() * s.x + cfg.gy() * s.y);
  if (nd.diamagnetic_enabled) {
    const auto [bx, by] = field_at(s.x, s.y, cfg, t);
    l += nd.chi() / (2.0 * constants::mu0) * (bx * bx + by * by);
  }
  return l;
}

double omega_max_bound(const PhaseState& s0, double duration, const NDParams& nd,
                       const NVParams& nv, const FieldConfig& cfg) {
  // reachable radius from a bound on the acceleration magnitude
  const double r0 = std::hypot(s0.x, s0.y);
  const double v0 = std::hypot(s0.vx, s0.vy);
  const double g = std::hypot(cfg.gx(), cfg.gy());
  double a_bound = nv.mu * std::abs(cfg.b_grad) / nd.mass + g;
  double reach = r0 + v0 * duration + 0.5 * a_bound * duration * duration;
  double b_reach = cfg.b0 + std::abs(cfg.b_grad) * (reach + 4.0 * nd.nv_distance);
  if (nd.diamagnetic_enabled) {
    a_bound += std::abs(nd.chi()) / (constants::mu0 * nd.mass) * std::abs(cfg.b_grad) * b_reach;
    reach = r0 + v0 * duration + 0.5 * a_bound * duration * duration;
    b_reach = cfg.b0 + std::abs(cfg.b_grad) * (reach + 4.0 * nd.nv_distance);
  }
  return std::sqrt(nv.mu * b_reach / nd.inertia);
}

Trajectory integrate(const PhaseState& s0, SpinLabel spin, double duration,
                     const NDParams& nd, const NVParams& nv, const FieldConfig& cfg,
                     double dt, const ModelOptions& opts, double t0, int sample_stride) {
  if (duration <= 0.0) throw std::invalid_argument("integrate: duration must be > 0");
  if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be > 0");
  const double w_max = omega_max_bound(s0, duration, nd, nv, cfg);
  double dt_max = duration;
  if (w_max > 0.0) dt_max = std::min(dt_max, constants::two_pi / (200.0 * w_max));
  if (dt > dt_max * (1.0 + 1e-12))
    throw std::invalid_argument("integrate: dt = " + std::to_string(dt) +
                                " exceeds resolution bound " + std::to_string(dt_max));

  const auto deriv = [&](const StateVec<7>& y, double t) {
    PhaseState s{y[0], y[1], y[2], y[3], y[4], y[5]};
    const Accelerations a = accelerations(s, spin, nd, nv, cfg, opts, t);
    return StateVec<7>{y[3], y[4], y[5], a.ax, a.ay, a.atheta,
                       lagrangian(s, spin, nd, nv, cfg, opts, t)};
  };

  const long n_steps = std::lround(std::ceil(duration / dt - 1e-9));
  const double h = duration / static_cast<double>(n_steps);

  Trajectory tr;
  StateVec<7> y{s0.x, s0.y, s0.theta, s0.vx, s0.vy, s0.theta_dot, 0.0};
  if (sample_stride > 0) tr.samples.push_back({t0, s0});
  for (long i = 0; i < n_steps; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    y = rk4_step(y, t, h, deriv);
    bool finite = true;
    for (double v : y) finite = finite && std::isfinite(v);
    if (!finite)
      throw std::runtime_error("integrate: non-finite state at t = " + std::to_string(t + h));
    if (sample_stride > 0 && ((i + 1) % sample_stride == 0 || i + 1 == n_steps))
      tr.samples.push_back({t0 + h * static_cast<double>(i + 1),
                            PhaseState{y[0], y[1], y[2], y[3], y[4], y[5]}});
  }
  tr.final_state = PhaseState{y[0], y[1], y[2], y[3], y[4], y[5]};
  tr.final_time = t0 + duration;
  tr.action = y[6];
  tr.segment_actions.push_back(y[6]);
  return tr;
}

namespace {

Trajectory run_arm(const PhaseState& s0, const std::vector<SpinSegment>& segs,
                   const NDParams& nd, const NVParams& nv, const FieldConfig& cfg,
                   const ModelOptions& opts, double dt, int sample_stride) {
  Trajectory arm;
  PhaseState s = s0;
  double t = 0.0;
  for (const auto& seg : segs) {
    Trajectory part = integrate(s, seg.spin, seg.duration, nd, nv, cfg, dt, opts, t, sample_stride);
    if (sample_stride > 0) {
      auto begin = part.samples.begin();
      if (!arm.samples.empty()) ++begin;  // duplicate boundary sample
      arm.samples.insert(arm.samples.end(), begin, part.samples.end());
    }
    arm.segment_actions.push_back(part.action);
    arm.action += part.action;
    s = part.final_state;
    t = part.final_time;
  }
  arm.final_state = s;
  arm.final_time = t;
  return arm;
}

}  // namespace

SgiResult run_sgi(const PhaseState& s0, const SequenceConfig& seq, const NDParams& nd,
                  const NVParams& nv, const FieldConfig& cfg, const ModelOptions& opts,
                  int steps_per_pulse, int sample_stride) {
  seq.validate();
  if (steps_per_pulse < 1) throw std::invalid_argument("run_sgi: steps_per_pulse must be >= 1");
  const double dt = seq.t_pulse / static_cast<double>(steps_per_pulse);

  SgiResult res;
  res.arm1 = run_arm(s0, seq.arm1, nd, nv, cfg, opts, dt, sample_stride);
  res.arm2 = run_arm(s0, seq.arm2, nd, nv, cfg, opts, dt, sample_stride);

  const PhaseState& f1 = res.arm1.final_state;
  const PhaseState& f2 = res.arm2.final_state;
  const double px = nd.mass * 0.5 * (f1.vx + f2.vx);
  const double py = nd.mass * 0.5 * (f1.vy + f2.vy);
  const double lz = nd.inertia * 0.5 * (f1.theta_dot + f2.theta_dot);
  res.phi_action = (res.arm1.action - res.arm2.action) / constants::hbar;
  res.phi_separation = -(px * (f1.x - f2.x) + py * (f1.y - f2.y) +
                         lz * (f1.theta - f2.theta)) / constants::hbar;
  res.delta_phi = res.phi_action + res.phi_separation;
  return res;
}

double phase_1d(double delta_a, double a_av, double g_xi, double mass, double t_pulse) {
  return 2.0 * mass * delta_a * t_pulse * t_pulse * t_pulse * (a_av + g_xi) / constants::hbar;
}

AxisExtents xi_zeta_extents(const Trajectory& tr, double theta0) {
  AxisExtents e;
  for (const auto& s : tr.samples) {
    const auto [xi, zeta] = to_xi_zeta(s.state.x, s.state.y, theta0);
    e.xi_max = std::max(e.xi_max, std::abs(xi));
    e.zeta_max = std::max(e.zeta_max, std::abs(zeta));
  }
  return e;
}

}  // namespace sgi
