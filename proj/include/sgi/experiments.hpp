#ifndef SGI_EXPERIMENTS_HPP
#define SGI_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgi/angular_analytics.hpp"
#include "sgi/config.hpp"
#include "sgi/csv.hpp"
#include "sgi/wavepacket.hpp"

// Named experiments (fig3..fig10 data tables), generic parameter sweeps with
// a deterministic worker pool, and the single-run summary behind `sgi run`.

namespace sgi {

inline constexpr const char* version_string = "0.1.0";

// Piecewise-constant-frequency schedules for both arms, following the 1D
// spin-dependent trajectories (lambda -> 1): each segment is subdivided and
// omega is frozen from |B_nv| = |B0(t) + (xi + 4d) B'| at the subsegment
// start. subdivisions = 1 reproduces the per-pulse freezing of the bare
// analytics.
std::pair<AngularSchedule, AngularSchedule> trajectory_schedules(const ResolvedConfig& rc,
                                                                 int subdivisions);

// Preparation statistics at the initial bias field (ground state or thermal).
AngularStats preparation_stats(const ResolvedConfig& rc);

// Closed-form phase uncertainty with the trajectory-coupled schedules.
PhaseUncertainty dphi_analytic(const ResolvedConfig& rc);

// Full-simulator phase uncertainty: a 7-point stencil of run_sgi total phases
// over the preparation Gaussian (exact for a quadratic phase surface).
// Captures the action, angular and transverse contributions together.
struct StencilUncertainty {
  double phi_center = 0.0;   // deterministic phase at the preparation center
  double mean_shift = 0.0;   // E[phi] - phi_center
  double std_dev = 0.0;
  double rms = 0.0;          // about phi_center
};
StencilUncertainty dphi_stencil(const ResolvedConfig& rc, int steps_per_pulse);

struct SweepSpec {
  std::string variable;  // theta0 | omega_T | b0 | b_grad | g_xi | d | t_theta
  double min = 0.0;      // SI units (rad, T, T/m, m/s^2, m, K, dimensionless)
  double max = 0.0;
  int n_points = 0;
  bool log_scale = false;

  void validate() const;  // throws ConfigError
  std::vector<double> grid() const;
};

struct Table {
  std::vector<std::string> comments;  // provenance preamble, '#'-prefixed on write
  std::vector<std::string> columns;
  std::vector<std::vector<CsvValue>> rows;

  void write_csv(std::ostream& out) const;
};

// Generic sweep: per point, ideal-preparation run_sgi outputs plus the
// closed-form and stencil uncertainties and both coherence estimates.
// Points run on a worker pool; output order and values are independent of
// thread count, with the per-point seed derived as seed ^ index.
Table sweep_table(const Config& base, const SweepSpec& spec, int threads, std::uint64_t seed);

// Named experiments; range_override trims the preset grid.
// fig3 ignores the range (it emits two trajectory pairs, not a sweep).
Table experiment_table(const std::string& name, const Config& base,
                       const std::optional<SweepSpec>& range_override, int threads,
                       std::uint64_t seed);
std::vector<std::string> experiment_names();

// Trajectory export for `sgi run`: both arms of the configured sequence from
// the ideal preparation.
Table trajectory_table(const ResolvedConfig& rc, int stride);

// Summary JSON for `sgi run` (schema_version, provenance, derived scales,
// run_sgi outputs, analytics, wavepacket coherence).
std::string run_summary_json(const ResolvedConfig& rc);

// Apply a sweep variable to a config copy (set in SI units).
void apply_sweep_variable(Config& cfg, const std::string& variable, double value);

}  // namespace sgi

#endif
