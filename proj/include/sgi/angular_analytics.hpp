#ifndef SGI_ANGULAR_ANALYTICS_HPP
#define SGI_ANGULAR_ANALYTICS_HPP

#include <cstdint>
#include <vector>

#include "sgi/field_geometry.hpp"
#include "sgi/nv_spin.hpp"

// Closed-form libration machinery: phase-space propagators per spin state,
// recombination mismatch, segment phases, the angular contribution to the
// interferometric phase as an exact quadratic form in the initial conditions,
// and the phase uncertainty it induces for Gaussian preparation (closed form
// plus a Monte Carlo oracle).

namespace sgi {

struct Mat2 {
  // row-major [ [a, b], [c, d] ] acting on (theta, theta_dot)
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  std::pair<double, double> apply(double x, double v) const {
    return {a * x + b * v, c * x + d * v};
  }
  double det() const { return a * d - b * c; }
};

// omega = sqrt(mu B_nv / I)
double libration_frequency(double b_nv, const NDParams& nd, const NVParams& nv);

enum class StatsSource { thermal, ground_state };

struct AngularStats {
  double d_theta = 0.0;      // [rad]
  double d_theta_dot = 0.0;  // [rad/s]
  StatsSource source = StatsSource::ground_state;
  double temperature = 0.0;  // [K], thermal only
};

// dtheta = sqrt(2 kB T / mu B0), dtheta_dot = sqrt(2 kB T / I)
AngularStats thermal_stats(double t_theta, double b0, const NDParams& nd, const NVParams& nv);

// dtheta = sqrt(hbar / 2 I omega), dtheta_dot = sqrt(hbar omega / 2 I)
AngularStats ground_state_stats(double omega, const NDParams& nd);

// Human-readable preparation warnings: dtheta approaching 1 rad, or angular
// drift dtheta_dot * tau_c approaching 1 rad over the coherence time.
std::vector<std::string> angular_prep_warnings(const AngularStats& stats, double tau_c);

// Phase-space propagator on (theta, theta_dot) for one segment:
//   |0>  U0 = [[1, t], [0, 1]]
//   |->  U- = [[cos wt, sin(wt)/w], [-w sin wt, cos wt]]
//   |+>  hyperbolic analogue of U- (the |+> potential is inverted near the
//        field direction); the linearization is trustworthy only for wt << 1
//        and plus_propagator_valid() flags wt > 0.3.
Mat2 evolution_matrix(SpinLabel spin, double t, double omega);
bool plus_propagator_valid(double omega_t);

struct MismatchCoeffs {
  double a = 0.0;  // delta_theta(4T)     = a * theta_dot(0) / omega
  double b = 0.0;  // delta_theta_dot(4T) = omega * b * theta(0)
};

// a(wT) = 2 wT sin(wT) [sin(wT) + wT cos(wT)],  b(wT) = 2 wT sin^2(wT)
MismatchCoeffs mismatch_coeffs(double omega_t);

// U1(4T) = U-(T) U0(2T) U-(T); U2(4T) = U0(T) U-(2T) U0(T)
std::pair<Mat2, Mat2> arm_matrices(double t_pulse, double omega);

struct MismatchResult {
  double a_coeff = 0.0;
  double b_coeff = 0.0;
  double delta_theta = 0.0;      // [rad]
  double delta_theta_dot = 0.0;  // [rad/s]
  double l_c = 0.0;              // angle coherence length hbar/dLz [rad]
  double l_w = 0.0;              // momentum coherence width hbar/dtheta [J s]
};

// Output-port mismatch when (theta(0), theta_dot(0)) take the preparation
// uncertainties; coherence lengths from the same initial uncertainties (the
// rough estimate).
MismatchResult recombination_mismatch(double omega, double t_pulse,
                                      const AngularStats& stats, const NDParams& nd);

// C = exp[-(a^2 dE_kin^2 + b^2 dE_pot^2) / (2 E0^2)]
double semiclassical_coherence(double a, double b, double de_kin, double de_pot, double e0);

// Ground-state convenience form exp[-(a^2 + b^2)/8].
double semiclassical_coherence_gs(double omega_t);

// Action phase of one segment from its initial conditions:
//   |->  (I sin wT / 2 hbar w) [(v^2 - w^2 x^2) cos wT - 2 w x v sin wT]
//   |0>  I T v^2 / 2 hbar
//   |+>  (I sinh wT / 2 hbar w) [(v^2 + w^2 x^2) cosh wT + 2 w x v sinh wT]
double segment_phase(SpinLabel spin, double t, double omega, double theta_i,
                     double theta_dot_i, const NDParams& nd);

// Piecewise-constant-frequency schedule for one arm.
struct AngularSegment {
  SpinLabel spin = SpinLabel::zero;
  double duration = 0.0;
  double omega = 0.0;  // ignored for |0>
};
using AngularSchedule = std::vector<AngularSegment>;

// Standard four-pulse schedules at constant omega.
std::pair<AngularSchedule, AngularSchedule> standard_schedules(double t_pulse, double omega,
                                                               bool symmetric = false);

struct ArmPhase {
  double phase = 0.0;  // accumulated action phase [rad]
  double theta = 0.0;
  double theta_dot = 0.0;
};

ArmPhase propagate_arm(const AngularSchedule& segs, double theta0, double theta_dot0,
                       const NDParams& nd);

// delta_phi = qxx x^2 + qvv v^2 + qxv x v, exact in (x, v) = (theta(0), theta_dot(0))
struct QuadraticForm {
  double qxx = 0.0;  // [1/rad^2] coefficient scale
  double qvv = 0.0;
  double qxv = 0.0;
};

// Two-arm phase difference including the angular separation phase
// -(I/hbar) (theta_dot avg)(theta diff), extracted exactly from three
// evaluations (the composition is an exact quadratic form). scale_x/scale_v
// set the evaluation points; pass the preparation uncertainties.
QuadraticForm sequence_phase_form(const AngularSchedule& arm1, const AngularSchedule& arm2,
                                  const NDParams& nd, double scale_x, double scale_v);

// Evaluate the two-arm phase difference (with separation phase) directly.
double sequence_phase(const AngularSchedule& arm1, const AngularSchedule& arm2,
                      const NDParams& nd, double theta0, double theta_dot0);

// Closed-form angular phase of the standard asymmetric sequence,
//   dphi = (I/hbar) sin(wT) [ w^2 T A theta0^2 + T B thdot0^2 + w T C theta0 thdot0 ],
//   A = s(1 - 2 s D), B = -D(1 - 2 s D), C = 2 s D (2 c - wT s), D = s + wT c.
// Matches the segment-phase composition identically (the spec-level oracle);
// see angular_phase_printed for the variant with the A/B terms scaled the way
// the letter coefficients are usually quoted, which agrees at wT = 1 only.
double angular_phase(double theta0, double theta_dot0, double omega, double t_pulse,
                     const NDParams& nd);

struct AngularPhaseCoeffs {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};
AngularPhaseCoeffs angular_phase_coeffs(double omega_t);

// As-quoted variant (Iw/hbar) s [A x^2 + T^2 B v^2 + T C x v]; kept for
// comparison reporting, not used by the uncertainty pipeline.
double angular_phase_printed(double theta0, double theta_dot0, double omega, double t_pulse,
                             const NDParams& nd);

struct PhaseUncertainty {
  double mean = 0.0;     // E[dphi] [rad]
  double std_dev = 0.0;  // sqrt(Var[dphi]) [rad]
  double rms = 0.0;      // sqrt(E[dphi^2]) [rad]; vanishes at wT = n pi
};

// Gaussian moment algebra on a quadratic form with independent zero-mean
// (theta, theta_dot):
//   mean = qxx sx^2 + qvv sv^2
//   var  = 2 qxx^2 sx^4 + 2 qvv^2 sv^4 + qxv^2 sx^2 sv^2
PhaseUncertainty phase_stats_from_form(const QuadraticForm& q, const AngularStats& stats);

// Closed-form uncertainty of the standard asymmetric sequence. The rms is the
// headline value: for the ground state it reduces to
//   (wT/2) |sin wT| sqrt(3A^2 + 3B^2 + 2AB + C^2).
PhaseUncertainty phase_uncertainty(const AngularStats& stats, double omega, double t_pulse,
                                   const NDParams& nd);

// RMS per the usual quoting of the general formula,
//   (Iw/hbar) sqrt(3A^2 sx^4 + 3B^2 T^4 sv^4 + (2AB + C^2) T^2 sx^2 sv^2),
// which lacks the |sin wT| prefactor of its own ground-state special case.
// Reported for comparison only.
double phase_uncertainty_as_printed(const AngularStats& stats, double omega, double t_pulse,
                                    const NDParams& nd);

struct McPhaseUncertainty {
  double mean = 0.0;
  double std_dev = 0.0;
  double std_err = 0.0;  // standard error of std_dev
  double rms = 0.0;
  double rms_err = 0.0;  // standard error of rms
  std::size_t n_samples = 0;
};

// Monte Carlo oracle: i.i.d. Gaussian (theta(0), theta_dot(0)) through
// angular_phase. Deterministic for a given seed (fixed engine + Box-Muller).
McPhaseUncertainty phase_uncertainty_mc(const AngularStats& stats, double omega,
                                        double t_pulse, const NDParams& nd,
                                        std::size_t n_samples, std::uint64_t seed);

// MC over an arbitrary quadratic form (the symmetric-configuration path).
McPhaseUncertainty phase_form_mc(const QuadraticForm& q, const AngularStats& stats,
                                 std::size_t n_samples, std::uint64_t seed);

// Uniformly sampled angular history for the transverse-phase quadrature.
struct AngularHistory {
  double dt = 0.0;
  std::vector<double> theta;      // [rad]
  std::vector<double> theta_dot;  // [rad/s]
};

struct TransversePhase {
  std::vector<double> zeta;  // [m], same grid as the history
  double phi_zeta = 0.0;     // [rad]
};

// zeta(t) = zeta_i + zeta_dot_i t - (q/w^2) theta(t), q = mu B'/M;
// phi_zeta = (M/hbar) integral [ zeta_dot^2 / 2 + q theta zeta ] dt by
// composite Simpson quadrature on the supplied history.
TransversePhase transverse_phase(const AngularHistory& hist, double omega, double q,
                                 double zeta_i, double zeta_dot_i, const NDParams& nd);

// dphi_thermal = dphi_gs * kB T / (hbar omega), the high-temperature scaling.
double thermal_scaling(double delta_phi_gs, double t_theta, double omega);

}  // namespace sgi

#endif
