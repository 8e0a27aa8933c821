#include "sgi/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

#include "sgi/rk4.hpp"

namespace sgi {

AngularWavepacket AngularWavepacket::ground_state(double omega, const NDParams& nd) {
  if (omega <= 0.0) throw std::invalid_argument("ground_state packet: omega must be > 0");
  return {std::sqrt(constants::hbar / (2.0 * nd.inertia * omega)), 0.0};
}

std::vector<WidthSample> evolve_sigma_theta(const AngularWavepacket& w0,
                                            const AngularSchedule& schedule,
                                            const NDParams& nd, int steps_per_segment) {
  if (w0.sigma_theta <= 0.0)
    throw std::invalid_argument("evolve_sigma_theta: initial width must be > 0");
  if (steps_per_segment < 1)
    throw std::invalid_argument("evolve_sigma_theta: steps_per_segment must be >= 1");

  const double quantum = constants::hbar * constants::hbar / (4.0 * nd.inertia * nd.inertia);
  const double floor = 1e-6 * w0.sigma_theta;

  std::vector<WidthSample> out;
  out.reserve(schedule.size() * static_cast<std::size_t>(steps_per_segment) + 1);
  StateVec<2> y{w0.sigma_theta, w0.sigma_dot};
  double t = 0.0;
  out.push_back({t, {y[0], y[1]}});

  for (const auto& seg : schedule) {
    // |-> confining, |0> free, |+> inverted
    double w2 = 0.0;
    if (seg.spin == SpinLabel::minus) w2 = seg.omega * seg.omega;
    else if (seg.spin == SpinLabel::plus) w2 = -seg.omega * seg.omega;
    const auto deriv = [&](const StateVec<2>& s, double) {
      return StateVec<2>{s[1], quantum / (s[0] * s[0] * s[0]) - w2 * s[0]};
    };
    const double h = seg.duration / steps_per_segment;
    for (int i = 0; i < steps_per_segment; ++i) {
      y = rk4_step(y, t, h, deriv);
      t += h;
      if (!(y[0] > floor))
        throw std::runtime_error("evolve_sigma_theta: width collapsed; reduce the step size");
      out.push_back({t, {y[0], y[1]}});
    }
  }
  return out;
}

namespace {

CoherenceResult gaussian_overlap(const AngularWavepacket& w1, const AngularWavepacket& w2,
                                 const NDParams& nd) {
  const double s1 = w1.sigma_theta, s2 = w2.sigma_theta;
  const double da = w1.chirp(nd) - w2.chirp(nd);
  const double half_sum = 0.5 * (1.0 / (s1 * s1) + 1.0 / (s2 * s2));
  CoherenceResult r;
  r.c_theta = 1.0 / std::sqrt(s1 * s2 * std::sqrt(half_sum * half_sum + da * da));
  r.widths_valid = s1 <= 0.3 && s2 <= 0.3;
  r.arm1_final = w1;
  r.arm2_final = w2;
  return r;
}

}  // namespace

CoherenceResult overlap_coherence(const AngularWavepacket& w1, const AngularWavepacket& w2,
                                  const NDParams& nd) {
  if (w1.sigma_theta <= 0.0 || w2.sigma_theta <= 0.0)
    throw std::invalid_argument("overlap_coherence: widths must be > 0");
  if (w1.sigma_theta > 0.3 || w2.sigma_theta > 0.3)
    throw std::domain_error("overlap_coherence: width exceeds 0.3 rad, Gaussian overlap invalid");
  return gaussian_overlap(w1, w2, nd);
}

CoherenceResult sgi_width_coherence(double omega, double t_pulse, const NDParams& nd,
                                    int steps_per_segment) {
  const auto [arm1, arm2] = standard_schedules(t_pulse, omega, false);
  const AngularWavepacket gs = AngularWavepacket::ground_state(omega, nd);
  // off the n pi resonances the width breathes between ~2wT sigma_0 and
  // ~sigma_0/2wT; the focusing passage needs steps growing with (wT)^3 to
  // stay resolved. The count depends only on wT, preserving scale invariance.
  const double wt = omega * t_pulse;
  const double range = 1.0 + 4.0 * wt * wt;
  const int steps = std::max(steps_per_segment,
                             static_cast<int>(std::ceil(10.0 * 2.0 * wt * range)));
  const auto h1 = evolve_sigma_theta(gs, arm1, nd, steps);
  const auto h2 = evolve_sigma_theta(gs, arm2, nd, steps);
  return gaussian_overlap(h1.back().packet, h2.back().packet, nd);
}

std::vector<CoMWidthSample> evolve_sigma_cm(const CoMWavepacket& w0, double theta_prime,
                                            const std::vector<WidthSample>& sigma_theta_history,
                                            const NDParams& nd, const NVParams& nv,
                                            const FieldConfig& cfg, double duration, double dt) {
  if (w0.sigma_x <= 0.0 || w0.sigma_y <= 0.0)
    throw std::invalid_argument("evolve_sigma_cm: initial widths must be > 0");
  if (sigma_theta_history.size() < 2)
    throw std::invalid_argument("evolve_sigma_cm: need a sampled sigma_theta history");
  if (dt <= 0.0 || duration <= 0.0)
    throw std::invalid_argument("evolve_sigma_cm: duration and dt must be > 0");

  const auto sigma_theta_at = [&](double t) {
    const auto& h = sigma_theta_history;
    if (t <= h.front().t) return h.front().packet.sigma_theta;
    if (t >= h.back().t) return h.back().packet.sigma_theta;
    // uniform grid lookup with linear interpolation
    const double grid = (h.back().t - h.front().t) / static_cast<double>(h.size() - 1);
    const std::size_t i = std::min(h.size() - 2,
                                   static_cast<std::size_t>((t - h.front().t) / grid));
    const double f = (t - h[i].t) / (h[i + 1].t - h[i].t);
    return h[i].packet.sigma_theta + f * (h[i + 1].packet.sigma_theta - h[i].packet.sigma_theta);
  };

  const double quantum = constants::hbar * constants::hbar / (4.0 * nd.mass * nd.mass);
  const double drive = nv.mu * cfg.b_grad / nd.mass;
  const double sx_floor = 1e-6 * w0.sigma_x, sy_floor = 1e-6 * w0.sigma_y;

  const auto deriv = [&](const StateVec<4>& s, double t) {
    const double st = sigma_theta_at(t);
    return StateVec<4>{s[2], s[3],
                       quantum / (s[0] * s[0] * s[0]) + drive * std::sin(theta_prime) * st,
                       quantum / (s[1] * s[1] * s[1]) + drive * std::cos(theta_prime) * st};
  };

  const long n = std::lround(std::ceil(duration / dt - 1e-9));
  const double h = duration / static_cast<double>(n);
  std::vector<CoMWidthSample> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  StateVec<4> y{w0.sigma_x, w0.sigma_y, w0.sigma_x_dot, w0.sigma_y_dot};
  double t = 0.0;
  out.push_back({t, w0});
  for (long i = 0; i < n; ++i) {
    y = rk4_step(y, t, h, deriv);
    t += h;
    if (!(y[0] > sx_floor) || !(y[1] > sy_floor))
      throw std::runtime_error("evolve_sigma_cm: width collapsed; reduce the step size");
    out.push_back({t, {y[0], y[1], y[2], y[3]}});
  }
  return out;
}

}  // namespace sgi
