#ifndef SGI_CONSTANTS_HPP
#define SGI_CONSTANTS_HPP

#include <numbers>

// Physical constants (2019 SI) and the unit conversions used throughout.
// All internal quantities are SI: T, m, kg, s, J, rad.

namespace sgi::constants {

constexpr double pi = std::numbers::pi_v<double>;
constexpr double two_pi = 2.0 * pi;

constexpr double planck = 6.62607015e-34;           // J s
constexpr double hbar = planck / two_pi;            // J s
constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
constexpr double boltzmann = 1.380649e-23;          // J/K
constexpr double mu0 = 4.0e-7 * pi;                 // T m/A
constexpr double g_earth = 9.80665;                 // m/s^2

// unit multipliers to SI
constexpr double gauss = 1e-4;        // T
constexpr double nanometer = 1e-9;    // m
constexpr double micrometer = 1e-6;   // m
constexpr double microsecond = 1e-6;  // s
constexpr double gauss_per_nm = gauss / nanometer;  // T/m
constexpr double gauss_per_um = gauss / micrometer; // T/m

}  // namespace sgi::constants

#endif
