#ifndef SGI_FIELD_GEOMETRY_HPP
#define SGI_FIELD_GEOMETRY_HPP

#include <optional>
#include <utility>

#include "sgi/constants.hpp"

// Nanodiamond geometry, the bias+quadrupole field model, the axial field at
// the NV and its angular derivative, and the rotated xi/zeta frame aligned
// with the splitting direction.

namespace sgi {

struct NDParams {
  double radius = 25e-9;        // R [m]
  double density = 3510.0;      // rho [kg/m^3]
  double mass = 0.0;            // M = (4 pi/3) rho R^3 [kg]
  double inertia = 0.0;         // I = (2/5) M R^2 [kg m^2]
  double nv_distance = 0.0;     // d [m], NV offset from the center
  double nv_angle = 0.0;        // alpha [rad], NV axis vs distance vector
  double chi_per_mass = -6.2e-9;  // diamagnetic susceptibility per mass [m^3/kg]
  bool diamagnetic_enabled = false;

  static NDParams make(double radius, double density = 3510.0,
                       double nv_distance = 0.0, double nv_angle = 0.0);
  double chi() const { return chi_per_mass * mass; }  // [m^3], <= 0
};

// Quadratic bias ramp B0(t) = B0(0) - (1/2) B' (a_av + g_xi) t^2, which holds
// the field at the mean position of the two arms at its initial value.
struct RampPolicy {
  double a_av = 0.0;  // average magnetic acceleration of the two arms [m/s^2]
  double g_xi = 0.0;  // gravity projection along xi [m/s^2]
};

struct FieldConfig {
  double b0 = 10.0 * constants::gauss;       // bias magnitude at t=0 [T]
  double theta0 = 0.0;                       // bias angle [rad]
  double b_grad = 0.2 * constants::gauss_per_nm;  // quadrupole gradient B' [T/m]
  std::optional<RampPolicy> ramp;            // absent = constant bias
  double g_xi = 0.0;                         // gravity along xi [m/s^2]
  double g_zeta = 0.0;                       // gravity along zeta [m/s^2]

  // B0(t) under the ramp policy. Throws std::domain_error if the ramp has
  // driven the bias to zero (the quadratic ramp is only meaningful while
  // B0(t) > 0).
  double bias_at(double t) const;

  // gravity vector expressed in the quadrupole (x, y) frame
  double gx() const;
  double gy() const;
};

struct Pose {
  double x = 0.0;      // ND center [m]
  double y = 0.0;      // [m]
  double theta = 0.0;  // ND rotation angle, stored unwrapped [rad]
};

// B(x, y, t) = B0(t) (cos theta0, sin theta0) + B' (x, -y)
std::pair<double, double> field_at(double x, double y, const FieldConfig& cfg, double t = 0.0);

// NV position: (x + d cos theta, y + d sin theta)
std::pair<double, double> nv_position(const Pose& p, const NDParams& nd);

// Axial field at the NV: B0 cos(theta'-theta0) + B'(x' cos theta' - y' sin theta'),
// theta' = theta + alpha.
double b_parallel_at_nv(const Pose& p, const NDParams& nd, const FieldConfig& cfg, double t = 0.0);

// Full derivative of the axial field with respect to the body angle,
//   -B0 sin(theta'-theta0) - B'(x sin theta' + y cos theta') - 2 d B' sin(2 theta' - alpha),
// which is the torque kernel. Vanishes identically at theta' = theta0 = alpha/2
// on the xi axis, independent of d.
double dbpar_dtheta(const Pose& p, const NDParams& nd, const FieldConfig& cfg, double t = 0.0);

// Bias angle of the stationary preparation: theta0 = alpha/2.
inline double preparation_bias_angle(double alpha) { return 0.5 * alpha; }

// Splitting-axis frame: xi = x cos theta0 - y sin theta0 (along the 1D motion),
// zeta = x sin theta0 + y cos theta0 (transverse).
std::pair<double, double> to_xi_zeta(double x, double y, double theta0);
std::pair<double, double> from_xi_zeta(double xi, double zeta, double theta0);

}  // namespace sgi

#endif
