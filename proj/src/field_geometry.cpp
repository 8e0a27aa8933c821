#include "sgi/field_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace sgi {

NDParams NDParams::make(double radius, double density, double nv_distance, double nv_angle) {
  if (radius <= 0.0) throw std::invalid_argument("NDParams: radius must be > 0");
  if (nv_distance < 0.0 || nv_distance > radius)
    throw std::invalid_argument("NDParams: nv_distance must be in [0, radius]");
  NDParams nd;
  nd.radius = radius;
  nd.density = density;
  nd.mass = 4.0 / 3.0 * constants::pi * density * radius * radius * radius;
  nd.inertia = 0.4 * nd.mass * radius * radius;
  nd.nv_distance = nv_distance;
  nd.nv_angle = nv_angle;
  return nd;
}

double FieldConfig::bias_at(double t) const {
  if (!ramp) return b0;
  const double b = b0 - 0.5 * b_grad * (ramp->a_av + ramp->g_xi) * t * t;
  if (b < 0.0)
    throw std::domain_error("FieldConfig: quadratic ramp drove the bias field below zero");
  return b;
}

double FieldConfig::gx() const {
  return g_xi * std::cos(theta0) + g_zeta * std::sin(theta0);
}

double FieldConfig::gy() const {
  return -g_xi * std::sin(theta0) + g_zeta * std::cos(theta0);
}

std::pair<double, double> field_at(double x, double y, const FieldConfig& cfg, double t) {
  const double b0t = cfg.bias_at(t);
  return {b0t * std::cos(cfg.theta0) + cfg.b_grad * x,
          b0t * std::sin(cfg.theta0) - cfg.b_grad * y};
}

std::pair<double, double> nv_position(const Pose& p, const NDParams& nd) {
  return {p.x + nd.nv_distance * std::cos(p.theta),
          p.y + nd.nv_distance * std::sin(p.theta)};
}

double b_parallel_at_nv(const Pose& p, const NDParams& nd, const FieldConfig& cfg, double t) {
  const double tp = p.theta + nd.nv_angle;
  const auto [xp, yp] = nv_position(p, nd);
  return cfg.bias_at(t) * std::cos(tp - cfg.theta0) +
         cfg.b_grad * (xp * std::cos(tp) - yp * std::sin(tp));
}

double dbpar_dtheta(const Pose& p, const NDParams& nd, const FieldConfig& cfg, double t) {
  const double tp = p.theta + nd.nv_angle;
  return -cfg.bias_at(t) * std::sin(tp - cfg.theta0) -
         cfg.b_grad * (p.x * std::sin(tp) + p.y * std::cos(tp)) -
         2.0 * nd.nv_distance * cfg.b_grad * std::sin(2.0 * tp - nd.nv_angle);
}

std::pair<double, double> to_xi_zeta(double x, double y, double theta0) {
  const double c = std::cos(theta0), s = std::sin(theta0);
  return {x * c - y * s, x * s + y * c};
}

std::pair<double, double> from_xi_zeta(double xi, double zeta, double theta0) {
  const double c = std::cos(theta0), s = std::sin(theta0);
  return {xi * c + zeta * s, -xi * s + zeta * c};
}

}  // namespace sgi
