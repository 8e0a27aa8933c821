#include "sgi/angular_analytics.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace sgi {

double libration_frequency(double b_nv, const NDParams& nd, const NVParams& nv) {
  if (b_nv < 0.0) throw std::invalid_argument("libration_frequency: b_nv must be >= 0");
  return std::sqrt(nv.mu * b_nv / nd.inertia);
}

AngularStats thermal_stats(double t_theta, double b0, const NDParams& nd, const NVParams& nv) {
  if (t_theta < 0.0) throw std::invalid_argument("thermal_stats: temperature must be >= 0");
  AngularStats st;
  st.source = StatsSource::thermal;
  st.temperature = t_theta;
  if (t_theta > 0.0) {
    st.d_theta = std::sqrt(2.0 * constants::boltzmann * t_theta / (nv.mu * b0));
    st.d_theta_dot = std::sqrt(2.0 * constants::boltzmann * t_theta / nd.inertia);
  }
  return st;
}

AngularStats ground_state_stats(double omega, const NDParams& nd) {
  if (omega <= 0.0) throw std::invalid_argument("ground_state_stats: omega must be > 0");
  AngularStats st;
  st.source = StatsSource::ground_state;
  st.d_theta = std::sqrt(constants::hbar / (2.0 * nd.inertia * omega));
  st.d_theta_dot = std::sqrt(constants::hbar * omega / (2.0 * nd.inertia));
  return st;
}

std::vector<std::string> angular_prep_warnings(const AngularStats& stats, double tau_c) {
  std::vector<std::string> out;
  if (stats.d_theta > 0.3)
    out.push_back("angular uncertainty dtheta = " + std::to_string(stats.d_theta) +
                  " rad is not small; splitting direction poorly defined");
  if (stats.d_theta_dot * tau_c > 0.3)
    out.push_back("angular drift dtheta_dot * tau_c = " +
                  std::to_string(stats.d_theta_dot * tau_c) +
                  " rad over the coherence time is not small");
  return out;
}

Mat2 evolution_matrix(SpinLabel spin, double t, double omega) {
  if (spin == SpinLabel::zero || omega == 0.0) return {1.0, t, 0.0, 1.0};
  if (spin == SpinLabel::minus) {
    const double c = std::cos(omega * t), s = std::sin(omega * t);
    return {c, s / omega, -omega * s, c};
  }
  const double ch = std::cosh(omega * t), sh = std::sinh(omega * t);
  return {ch, sh / omega, omega * sh, ch};
}

bool plus_propagator_valid(double omega_t) { return omega_t <= 0.3; }

MismatchCoeffs mismatch_coeffs(double omega_t) {
  const double s = std::sin(omega_t), c = std::cos(omega_t);
  return {2.0 * omega_t * s * (s + omega_t * c), 2.0 * omega_t * s * s};
}

std::pair<Mat2, Mat2> arm_matrices(double t_pulse, double omega) {
  const Mat2 um = evolution_matrix(SpinLabel::minus, t_pulse, omega);
  const Mat2 um2 = evolution_matrix(SpinLabel::minus, 2.0 * t_pulse, omega);
  const Mat2 u0 = evolution_matrix(SpinLabel::zero, t_pulse, 0.0);
  const Mat2 u02 = evolution_matrix(SpinLabel::zero, 2.0 * t_pulse, 0.0);
  return {um * u02 * um, u0 * um2 * u0};
}

MismatchResult recombination_mismatch(double omega, double t_pulse,
                                      const AngularStats& stats, const NDParams& nd) {
  MismatchResult r;
  const MismatchCoeffs ab = mismatch_coeffs(omega * t_pulse);
  r.a_coeff = ab.a;
  r.b_coeff = ab.b;
  r.delta_theta = omega > 0.0 ? ab.a * stats.d_theta_dot / omega : 0.0;
  r.delta_theta_dot = omega * ab.b * stats.d_theta;
  const double d_lz = nd.inertia * stats.d_theta_dot;
  r.l_c = d_lz > 0.0 ? constants::hbar / d_lz : 0.0;
  r.l_w = stats.d_theta > 0.0 ? constants::hbar / stats.d_theta : 0.0;
  return r;
}

double semiclassical_coherence(double a, double b, double de_kin, double de_pot, double e0) {
  if (e0 <= 0.0) throw std::invalid_argument("semiclassical_coherence: e0 must be > 0");
  return std::exp(-(a * a * de_kin * de_kin + b * b * de_pot * de_pot) / (2.0 * e0 * e0));
}

double semiclassical_coherence_gs(double omega_t) {
  const MismatchCoeffs ab = mismatch_coeffs(omega_t);
  return std::exp(-(ab.a * ab.a + ab.b * ab.b) / 8.0);
}

double segment_phase(SpinLabel spin, double t, double omega, double theta_i,
                     double theta_dot_i, const NDParams& nd) {
  const double pre = nd.inertia / (2.0 * constants::hbar);
  if (spin == SpinLabel::zero || omega == 0.0) return pre * t * theta_dot_i * theta_dot_i;
  const double x = theta_i, v = theta_dot_i, w = omega;
  if (spin == SpinLabel::minus) {
    const double s = std::sin(w * t), c = std::cos(w * t);
    return pre * s / w * ((v * v - w * w * x * x) * c - 2.0 * w * x * v * s);
  }
  const double sh = std::sinh(w * t), ch = std::cosh(w * t);
  return pre * sh / w * ((v * v + w * w * x * x) * ch + 2.0 * w * x * v * sh);
}

std::pair<AngularSchedule, AngularSchedule> standard_schedules(double t_pulse, double omega,
                                                               bool symmetric) {
  const SpinLabel other = symmetric ? SpinLabel::plus : SpinLabel::zero;
  AngularSchedule a1{{SpinLabel::minus, t_pulse, omega},
                     {other, 2.0 * t_pulse, omega},
                     {SpinLabel::minus, t_pulse, omega}};
  AngularSchedule a2{{other, t_pulse, omega},
                     {SpinLabel::minus, 2.0 * t_pulse, omega},
                     {other, t_pulse, omega}};
  return {a1, a2};
}

ArmPhase propagate_arm(const AngularSchedule& segs, double theta0, double theta_dot0,
                       const NDParams& nd) {
  ArmPhase out;
  double x = theta0, v = theta_dot0;
  for (const auto& seg : segs) {
    out.phase += segment_phase(seg.spin, seg.duration, seg.omega, x, v, nd);
    const auto [x2, v2] = evolution_matrix(seg.spin, seg.duration, seg.omega).apply(x, v);
    x = x2;
    v = v2;
  }
  out.theta = x;
  out.theta_dot = v;
  return out;
}

double sequence_phase(const AngularSchedule& arm1, const AngularSchedule& arm2,
                      const NDParams& nd, double theta0, double theta_dot0) {
  const ArmPhase p1 = propagate_arm(arm1, theta0, theta_dot0, nd);
  const ArmPhase p2 = propagate_arm(arm2, theta0, theta_dot0, nd);
  const double lz_avg = nd.inertia * 0.5 * (p1.theta_dot + p2.theta_dot);
  const double sep = -lz_avg * (p1.theta - p2.theta) / constants::hbar;
  return p1.phase - p2.phase + sep;
}

QuadraticForm sequence_phase_form(const AngularSchedule& arm1, const AngularSchedule& arm2,
                                  const NDParams& nd, double scale_x, double scale_v) {
  if (scale_x <= 0.0 || scale_v <= 0.0)
    throw std::invalid_argument("sequence_phase_form: scales must be > 0");
  const double f10 = sequence_phase(arm1, arm2, nd, scale_x, 0.0);
  const double f01 = sequence_phase(arm1, arm2, nd, 0.0, scale_v);
  const double f11 = sequence_phase(arm1, arm2, nd, scale_x, scale_v);
  QuadraticForm q;
  q.qxx = f10 / (scale_x * scale_x);
  q.qvv = f01 / (scale_v * scale_v);
  q.qxv = (f11 - f10 - f01) / (scale_x * scale_v);
  return q;
}

AngularPhaseCoeffs angular_phase_coeffs(double omega_t) {
  const double s = std::sin(omega_t), c = std::cos(omega_t);
  AngularPhaseCoeffs k;
  k.d = s + omega_t * c;
  k.a = s * (1.0 - 2.0 * s * k.d);
  k.b = -k.d * (1.0 - 2.0 * s * k.d);
  k.c = 2.0 * s * k.d * (2.0 * c - omega_t * s);
  return k;
}

namespace {

QuadraticForm asymmetric_phase_form(double omega, double t_pulse, const NDParams& nd) {
  const double wt = omega * t_pulse;
  const double s = std::sin(wt);
  const AngularPhaseCoeffs k = angular_phase_coeffs(wt);
  const double pre = nd.inertia / constants::hbar * s;
  QuadraticForm q;
  q.qxx = pre * omega * omega * t_pulse * k.a;
  q.qvv = pre * t_pulse * k.b;
  q.qxv = pre * omega * t_pulse * k.c;
  return q;
}

}  // namespace

double angular_phase(double theta0, double theta_dot0, double omega, double t_pulse,
                     const NDParams& nd) {
  const QuadraticForm q = asymmetric_phase_form(omega, t_pulse, nd);
  return q.qxx * theta0 * theta0 + q.qvv * theta_dot0 * theta_dot0 +
         q.qxv * theta0 * theta_dot0;
}

double angular_phase_printed(double theta0, double theta_dot0, double omega, double t_pulse,
                             const NDParams& nd) {
  const double wt = omega * t_pulse;
  const AngularPhaseCoeffs k = angular_phase_coeffs(wt);
  return nd.inertia * omega / constants::hbar * std::sin(wt) *
         (k.a * theta0 * theta0 + t_pulse * t_pulse * k.b * theta_dot0 * theta_dot0 +
          t_pulse * k.c * theta0 * theta_dot0);
}

PhaseUncertainty phase_stats_from_form(const QuadraticForm& q, const AngularStats& stats) {
  const double sx2 = stats.d_theta * stats.d_theta;
  const double sv2 = stats.d_theta_dot * stats.d_theta_dot;
  PhaseUncertainty u;
  u.mean = q.qxx * sx2 + q.qvv * sv2;
  const double var = 2.0 * q.qxx * q.qxx * sx2 * sx2 + 2.0 * q.qvv * q.qvv * sv2 * sv2 +
                     q.qxv * q.qxv * sx2 * sv2;
  u.std_dev = std::sqrt(var);
  u.rms = std::sqrt(var + u.mean * u.mean);
  return u;
}

PhaseUncertainty phase_uncertainty(const AngularStats& stats, double omega, double t_pulse,
                                   const NDParams& nd) {
  return phase_stats_from_form(asymmetric_phase_form(omega, t_pulse, nd), stats);
}

double phase_uncertainty_as_printed(const AngularStats& stats, double omega, double t_pulse,
                                    const NDParams& nd) {
  const AngularPhaseCoeffs k = angular_phase_coeffs(omega * t_pulse);
  const double sx2 = stats.d_theta * stats.d_theta;
  const double sv2 = stats.d_theta_dot * stats.d_theta_dot;
  const double t2 = t_pulse * t_pulse;
  return nd.inertia * omega / constants::hbar *
         std::sqrt(3.0 * k.a * k.a * sx2 * sx2 + 3.0 * k.b * k.b * t2 * t2 * sv2 * sv2 +
                   (2.0 * k.a * k.b + k.c * k.c) * t2 * sx2 * sv2);
}

namespace {

// Portable Gaussian sampling: mt19937_64 is fully specified by the standard,
// and Box-Muller avoids the implementation-defined std::normal_distribution.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(constants::two_pi * u2);
    have_spare_ = true;
    return r * std::cos(constants::two_pi * u2);
  }

 private:
  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

template <typename Phase>
McPhaseUncertainty mc_uncertainty(Phase&& phase_of, const AngularStats& stats,
                                  std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw std::invalid_argument("phase_uncertainty_mc: need n_samples >= 2");
  GaussianSampler gauss(seed);
  // accumulate moments of dphi and dphi^2
  double sum = 0.0, sum2 = 0.0, sum3 = 0.0, sum4 = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double x = stats.d_theta * gauss.next();
    const double v = stats.d_theta_dot * gauss.next();
    const double f = phase_of(x, v);
    const double f2 = f * f;
    sum += f;
    sum2 += f2;
    sum3 += f2 * f;
    sum4 += f2 * f2;
  }
  const double n = static_cast<double>(n_samples);
  const double m1 = sum / n;
  const double m2 = sum2 / n;
  const double m3 = sum3 / n;
  const double m4 = sum4 / n;

  McPhaseUncertainty r;
  r.n_samples = n_samples;
  r.mean = m1;
  const double var = std::max(0.0, m2 - m1 * m1);
  r.std_dev = std::sqrt(var);
  r.rms = std::sqrt(m2);
  // delta method: Var[m2] = (m4 - m2^2)/n, rms = sqrt(m2)
  const double var_m2 = std::max(0.0, m4 - m2 * m2) / n;
  r.rms_err = r.rms > 0.0 ? 0.5 * std::sqrt(var_m2) / r.rms : std::sqrt(std::sqrt(var_m2));
  // Var[s^2] for non-normal data: (m4' - var^2)/n with central fourth moment
  const double c2 = var;
  const double c4 = std::max(0.0, m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1);
  const double var_s2 = std::max(0.0, c4 - c2 * c2) / n;
  r.std_err = r.std_dev > 0.0 ? 0.5 * std::sqrt(var_s2) / r.std_dev : std::sqrt(std::sqrt(var_s2));
  return r;
}

}  // namespace

McPhaseUncertainty phase_uncertainty_mc(const AngularStats& stats, double omega,
                                        double t_pulse, const NDParams& nd,
                                        std::size_t n_samples, std::uint64_t seed) {
  return mc_uncertainty(
      [&](double x, double v) { return angular_phase(x, v, omega, t_pulse, nd); },
      stats, n_samples, seed);
}

McPhaseUncertainty phase_form_mc(const QuadraticForm& q, const AngularStats& stats,
                                 std::size_t n_samples, std::uint64_t seed) {
  return mc_uncertainty(
      [&](double x, double v) { return q.qxx * x * x + q.qvv * v * v + q.qxv * x * v; },
      stats, n_samples, seed);
}

namespace {

// Composite Simpson on a uniform grid; 3/8 rule closes an odd interval count.
double simpson(const std::vector<double>& f, double dt) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * dt * (f[0] + f[1]);
  std::size_t intervals = n - 1;
  double total = 0.0;
  std::size_t start = 0;
  if (intervals % 2 == 1) {
    if (intervals >= 3) {
      total += 3.0 * dt / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);
      start = 3;
    } else {
      return 0.5 * dt * (f[0] + f[1]);
    }
  }
  for (std::size_t i = start; i + 2 <= n - 1; i += 2)
    total += dt / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
  return total;
}

}  // namespace

TransversePhase transverse_phase(const AngularHistory& hist, double omega, double q,
                                 double zeta_i, double zeta_dot_i, const NDParams& nd) {
  if (hist.theta.size() != hist.theta_dot.size() || hist.theta.size() < 2)
    throw std::invalid_argument("transverse_phase: history needs matched theta/theta_dot samples");
  if (q != 0.0 && omega <= 0.0)
    throw std::invalid_argument("transverse_phase: omega must be > 0 when q != 0");

  const std::size_t n = hist.theta.size();
  const double k = q == 0.0 ? 0.0 : q / (omega * omega);
  TransversePhase out;
  out.zeta.resize(n);
  std::vector<double> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = hist.dt * static_cast<double>(i);
    const double z = zeta_i + zeta_dot_i * t - k * hist.theta[i];
    const double zd = zeta_dot_i - k * hist.theta_dot[i];
    out.zeta[i] = z;
    integrand[i] = 0.5 * zd * zd + q * hist.theta[i] * z;
  }
  out.phi_zeta = nd.mass / constants::hbar * simpson(integrand, hist.dt);
  return out;
}

double thermal_scaling(double delta_phi_gs, double t_theta, double omega) {
  if (omega <= 0.0) throw std::invalid_argument("thermal_scaling: omega must be > 0");
  return delta_phi_gs * constants::boltzmann * t_theta / (constants::hbar * omega);
}

}  // namespace sgi
