#ifndef SGI_VALIDATE_HPP
#define SGI_VALIDATE_HPP

#include <functional>
#include <string>
#include <vector>

#include "sgi/field_geometry.hpp"

// Built-in oracle suite behind `sgi validate`: every closed form is checked
// against an independent route (exact diagonalization, finite differences,
// direct numerical integration, Monte Carlo).

namespace sgi {

struct OracleResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;      // worst observed deviation
  double tolerance = 0.0;
  std::string detail;
};

struct OracleOptions {
  bool quick = false;  // reduced grids and sample counts, same checks
};

// Individual oracles. The torque check takes the function under test so a
// deliberately broken implementation can be injected in tests.
using TorqueFn = std::function<double(const Pose&, const NDParams&, const FieldConfig&, double)>;

OracleResult check_adiabatic_vs_exact(const OracleOptions& opt = {});
OracleResult check_propagators_vs_integration(const OracleOptions& opt = {});
OracleResult check_mismatch_vs_matrices(const OracleOptions& opt = {});
OracleResult check_angular_phase_vs_segments(const OracleOptions& opt = {});
OracleResult check_torque_finite_difference(const TorqueFn& fn, const OracleOptions& opt = {});
OracleResult check_phase_uncertainty_vs_mc(const OracleOptions& opt = {});

std::vector<OracleResult> run_oracle_suite(const OracleOptions& opt = {});

}  // namespace sgi

#endif
