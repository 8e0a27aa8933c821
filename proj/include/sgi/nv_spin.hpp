#ifndef SGI_NV_SPIN_HPP
#define SGI_NV_SPIN_HPP

#include <array>
#include <complex>

#include "sgi/constants.hpp"

// NV ground-state spin triplet in a weak static field: adiabatic
// eigen-energies of the |+>, |0>, |-> states, the lambda saturation factor,
// and an exact 3x3 diagonalization that serves as the oracle for the
// adiabatic formulas.

namespace sgi {

// Adiabatic spin state label. The integer value is the multiplier p that
// enters the force and torque equations (p = 0 for the magnetically
// insensitive state).
enum class SpinLabel : int {
  minus = -1,  // strong-field seeking
  zero = 0,
  plus = +1,   // weak-field seeking
};

inline int spin_p(SpinLabel s) { return static_cast<int>(s); }

struct NVParams {
  double mu = 2.0 * constants::bohr_magneton;      // magnetic moment [J/T]
  double zero_field_splitting = constants::planck * 2.87e9;  // D [J]
  double epsilon = constants::planck * 5.0e6;      // strain/electric coupling magnitude [J]
  double epsilon_phase = 0.0;                      // [rad]

  std::complex<double> epsilon_c() const {
    return std::polar(epsilon, epsilon_phase);
  }
};

// Field components relative to the NV axis. For the planar model the
// transverse field lies in the rotation plane, so phi is 0 or pi depending
// on which side of the axis it points.
struct LocalField {
  double b_par = 0.0;   // axial component [T]
  double b_perp = 0.0;  // transverse magnitude, >= 0 [T]
  double phi = 0.0;     // transverse azimuth [rad]
};

struct EnergyLevels {
  double e_plus = 0.0;    // E(|+>) [J]
  double e_minus = 0.0;   // E(|->) [J]
  double de_zero = 0.0;   // field shift of E(|0>) relative to -D [J]
  double eta_plus = 0.0;
  double eta_minus = 0.0;
  double eta_zero = 0.0;
  std::complex<double> eps_tilde{0.0, 0.0};  // transverse-shifted coupling [J]
};

// B_par = Bx cos(theta') + By sin(theta'); the signed transverse component
// -Bx sin(theta') + By cos(theta') is folded into (b_perp >= 0, phi in {0, pi}).
LocalField local_field_components(double bx, double by, double theta_prime);

// True when mu*|B| < D/10, the regime where the adiabatic formulas are used.
bool weak_field_ok(const LocalField& f, const NVParams& nv);

// Second-order adiabatic energies:
//   eta_p  = mu^2 Bperp^2 / 2(D + p mu |Bpar|)
//   eps~   = eps + eta_0 e^{2 i phi}
//   E(+/-) = eta_(+/-) +/- sqrt(mu^2 Bpar^2 + |eps~|^2)
//   dE_0   = -(mu^2/2) [1/(D - mu Bpar) + 1/(D + mu Bpar)] Bperp^2
// Throws std::domain_error when a denominator closes (outside weak-field
// validity). The eta_p denominator is D + p mu|Bpar|: the |+> level sits
// above the |0> level by D + mu|Bpar|, which the exact 3x3 oracle confirms.
EnergyLevels adiabatic_energies(const LocalField& f, const NVParams& nv);

// Eigenvalues of the full 3x3 triplet Hamiltonian in the (|+1>,|0>,|-1>)
// basis, sorted ascending. Oracle for adiabatic_energies.
std::array<double, 3> exact_hamiltonian_eigvals(const LocalField& f, const NVParams& nv);

// lambda = mu|Bpar| / sqrt(mu^2 Bpar^2 + eps^2), in [0, 1). The sign of the
// force direction is carried by the dynamics equations, not here.
double lambda_factor(double b_par, const NVParams& nv);

}  // namespace sgi

#endif
