#include "sgi/nv_spin.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgi {

LocalField local_field_components(double bx, double by, double theta_prime) {
  const double c = std::cos(theta_prime);
  const double s = std::sin(theta_prime);
  LocalField f;
  f.b_par = bx * c + by * s;
  const double perp = -bx * s + by * c;
  f.b_perp = std::abs(perp);
  f.phi = (perp >= 0.0) ? 0.0 : constants::pi;
  return f;
}

bool weak_field_ok(const LocalField& f, const NVParams& nv) {
  const double b = std::hypot(f.b_par, f.b_perp);
  return nv.mu * b < 0.1 * nv.zero_field_splitting;
}

EnergyLevels adiabatic_energies(const LocalField& f, const NVParams& nv) {
  const double mu = nv.mu;
  const double d = nv.zero_field_splitting;
  const double zb = mu * std::abs(f.b_par);
  const double perp2 = mu * mu * f.b_perp * f.b_perp;

  if (d - zb <= 0.0)
    throw std::domain_error("adiabatic_energies: mu|Bpar| >= D, outside weak-field validity");

  EnergyLevels lv;
  lv.eta_plus = 0.5 * perp2 / (d + zb);
  lv.eta_minus = 0.5 * perp2 / (d - zb);
  lv.eta_zero = 0.5 * perp2 / d;
  lv.eps_tilde = nv.epsilon_c() + lv.eta_zero * std::polar(1.0, 2.0 * f.phi);

  const double root = std::sqrt(mu * mu * f.b_par * f.b_par + std::norm(lv.eps_tilde));
  lv.e_plus = lv.eta_plus + root;
  lv.e_minus = lv.eta_minus - root;
  lv.de_zero = -0.5 * perp2 * (1.0 / (d - mu * f.b_par) + 1.0 / (d + mu * f.b_par));
  return lv;
}

std::array<double, 3> exact_hamiltonian_eigvals(const LocalField& f, const NVParams& nv) {
  using cd = std::complex<double>;
  const double mu = nv.mu;
  const cd eps = nv.epsilon_c();
  const cd t = mu * f.b_perp / std::sqrt(2.0) * std::polar(1.0, f.phi);

  // basis order |mS=+1>, |mS=0>, |mS=-1>
  Eigen::Matrix3cd h;
  h << cd(mu * f.b_par, 0.0), std::conj(t), std::conj(eps),
       t, cd(-nv.zero_field_splitting, 0.0), std::conj(t),
       eps, t, cd(-mu * f.b_par, 0.0);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  std::array<double, 3> out{ev(0), ev(1), ev(2)};
  std::sort(out.begin(), out.end());
  return out;
}

double lambda_factor(double b_par, const NVParams& nv) {
  const double zb = nv.mu * std::abs(b_par);
  const double denom = std::sqrt(zb * zb + nv.epsilon * nv.epsilon);
  if (denom == 0.0) return 0.0;  // b_par = 0 and eps = 0
  return zb / denom;
}

}  // namespace sgi
