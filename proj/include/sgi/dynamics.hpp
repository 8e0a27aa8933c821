#ifndef SGI_DYNAMICS_HPP
#define SGI_DYNAMICS_HPP

#include <vector>

#include "sgi/field_geometry.hpp"
#include "sgi/nv_spin.hpp"

// Classical translational-rotational dynamics of the ND through the SGI
// sequence, with the Lagrangian action accumulated along each arm and the
// interferometric phase assembled from the action difference plus the
// separation phase.

namespace sgi {

enum class LambdaMode {
  unity,  // lambda -> 1, the regime of the main analysis
  exact,  // lambda = mu Bpar / sqrt(mu^2 Bpar^2 + eps^2), signed
};

struct ModelOptions {
  LambdaMode lambda_mode = LambdaMode::unity;
  // Include the transverse-field shifts eta_p / dE_0 in the potential
  // energies. Off by default; the shifts never enter the printed force and
  // torque equations, only the action bookkeeping.
  bool include_perp_shifts = false;
};

struct PhaseState {
  double x = 0.0, y = 0.0;    // [m]
  double theta = 0.0;         // [rad], unwrapped
  double vx = 0.0, vy = 0.0;  // [m/s]
  double theta_dot = 0.0;     // [rad/s]
};

struct SpinSegment {
  SpinLabel spin = SpinLabel::zero;
  double duration = 0.0;  // [s]
};

struct SequenceConfig {
  double t_pulse = 25e-6;  // T [s]
  double t_delay = 0.0;    // Td [s]; delays are gradient-off free drift
  bool symmetric = false;  // replace |0> by |+>
  std::vector<SpinSegment> arm1, arm2;

  // The four-pulse scheme with durations T, 2T, T:
  // arm1 |->,|0>,|->; arm2 |0>,|->,|0> (|0> -> |+> when symmetric).
  static SequenceConfig standard(double t_pulse, bool symmetric = false,
                                 double t_delay = 0.0);
  void validate() const;          // throws std::invalid_argument
  double total_duration() const;  // per arm
};

struct Accelerations {
  double ax = 0.0, ay = 0.0;  // [m/s^2]
  double atheta = 0.0;        // [rad/s^2]
};

// Component equations of motion:
//   x..     = -p lam (mu B'/M) cos th' + (chi/mu0 M) Bx B' + gx
//   y..     = +p lam (mu B'/M) sin th' - (chi/mu0 M) By B' + gy
//   I th..  = -p lam mu dBpar/dtheta
// The signs follow the component equations; the compact force expression
// F = -p mu grad(Bpar) fixes only the magnitude convention.
Accelerations accelerations(const PhaseState& s, SpinLabel spin, const NDParams& nd,
                            const NVParams& nv, const FieldConfig& cfg,
                            const ModelOptions& opts = {}, double t = 0.0);

// Lagrangian evaluated at a state; the spin potential is measured from its
// zero-field value per state, so sequences that distribute |0> time unevenly
// between the arms behave like the rotating-frame treatment.
double lagrangian(const PhaseState& s, SpinLabel spin, const NDParams& nd,
                  const NVParams& nv, const FieldConfig& cfg,
                  const ModelOptions& opts = {}, double t = 0.0);

struct TrajectorySample {
  double t = 0.0;
  PhaseState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;   // per sample_stride
  std::vector<double> segment_actions;     // [J s]
  double action = 0.0;                     // total [J s]
  PhaseState final_state;
  double final_time = 0.0;
};

// Fixed-step RK4 from s0 over [t0, t0+duration] in a single spin state, with
// the action quadrature carried as an extra state component. Requires
// dt <= min(duration, 2 pi / (200 omega_max)) with omega_max estimated
// conservatively from the strongest field reachable; throws
// std::invalid_argument otherwise and std::runtime_error if the state leaves
// the finite domain. sample_stride = 0 records only segment endpoints.
Trajectory integrate(const PhaseState& s0, SpinLabel spin, double duration,
                     const NDParams& nd, const NVParams& nv, const FieldConfig& cfg,
                     double dt, const ModelOptions& opts = {}, double t0 = 0.0,
                     int sample_stride = 1);

// Conservative libration-frequency bound used by the dt precondition.
double omega_max_bound(const PhaseState& s0, double duration, const NDParams& nd,
                       const NVParams& nv, const FieldConfig& cfg);

struct SgiResult {
  Trajectory arm1, arm2;
  double phi_action = 0.0;      // (S1 - S2)/hbar [rad]
  double phi_separation = 0.0;  // -(p_avg . dr + Lz_avg dtheta)/hbar [rad]
  double delta_phi = 0.0;       // total [rad]
};

// Both arms from the shared initial state, spin swaps instantaneous at the
// segment boundaries. dt = t_pulse / steps_per_pulse.
SgiResult run_sgi(const PhaseState& s0, const SequenceConfig& seq, const NDParams& nd,
                  const NVParams& nv, const FieldConfig& cfg, const ModelOptions& opts = {},
                  int steps_per_pulse = 2000, int sample_stride = 1);

// Strictly-1D interferometric phase: 2 M da T^3 (a_av + g_xi) / hbar.
double phase_1d(double delta_a, double a_av, double g_xi, double mass, double t_pulse);

// Largest |xi| and |zeta| over the recorded samples, for collinearity checks.
struct AxisExtents {
  double xi_max = 0.0;
  double zeta_max = 0.0;
};
AxisExtents xi_zeta_extents(const Trajectory& tr, double theta0);

}  // namespace sgi

#endif
