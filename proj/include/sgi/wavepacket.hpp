#ifndef SGI_WAVEPACKET_HPP
#define SGI_WAVEPACKET_HPP

#include <vector>

#include "sgi/angular_analytics.hpp"
#include "sgi/field_geometry.hpp"

// Gaussian wavepacket widths through the SGI sequence and the two-arm
// overlap coherence. The packet center is pinned at the trap angle; center
// dynamics live in dynamics/angular_analytics.

namespace sgi {

struct AngularWavepacket {
  double sigma_theta = 0.0;  // width [rad], > 0
  double sigma_dot = 0.0;    // [rad/s]

  // momentum chirp alpha = (I/hbar) sigma_dot / sigma [1/rad^2]
  double chirp(const NDParams& nd) const {
    return nd.inertia / constants::hbar * sigma_dot / sigma_theta;
  }
  static AngularWavepacket ground_state(double omega, const NDParams& nd);
};

struct CoMWavepacket {
  double sigma_x = 0.0, sigma_y = 0.0;          // [m]
  double sigma_x_dot = 0.0, sigma_y_dot = 0.0;  // [m/s]
};

struct CoherenceResult {
  double c_theta = 1.0;      // in (0, 1]
  bool widths_valid = true;  // all widths within the 0.3 rad Gaussian domain
  AngularWavepacket arm1_final, arm2_final;
};

struct WidthSample {
  double t = 0.0;
  AngularWavepacket packet;
};

// sigma.. = hbar^2/(4 I^2 sigma^3) - omega(t)^2 sigma, with omega(t) held at
// the schedule value during |-> segments and 0 during |0> segments (the
// hyperbolic |+> segments carry -omega^2, i.e. the inverted potential).
// RK4 with steps_per_segment fixed steps per schedule entry. Throws
// std::runtime_error when the width collapses below 1e-6 of its start value.
std::vector<WidthSample> evolve_sigma_theta(const AngularWavepacket& w0,
                                            const AngularSchedule& schedule,
                                            const NDParams& nd, int steps_per_segment = 4000);

// Closed Gaussian overlap of two packets centered at the same angle:
//   C = [ s1 s2 sqrt( (1/s1^2 + 1/s2^2)^2/4 + (a1 - a2)^2 ) ]^(-1/2).
// Valid for widths well inside the angular domain; throws std::domain_error
// for sigma > 0.3 rad.
CoherenceResult overlap_coherence(const AngularWavepacket& w1, const AngularWavepacket& w2,
                                  const NDParams& nd);

// Convenience: evolve both arms of the standard sequence from the ground
// state of the preparation trap and return the output overlap. Depends only
// on the product omega * t_pulse. Far off the omega T = n pi resonances the
// widths outgrow the Gaussian domain; the closed form is still evaluated
// (the overlap is tiny there) and widths_valid reports the breach instead of
// throwing.
CoherenceResult sgi_width_coherence(double omega, double t_pulse, const NDParams& nd,
                                    int steps_per_segment = 4000);

struct CoMWidthSample {
  double t = 0.0;
  CoMWavepacket packet;
};

// CoM width equations coupled to the angular width:
//   sx.. = hbar^2/(4 M^2 sx^3) + (mu B'/M) sin(theta') sigma_theta(t)
//   sy.. = hbar^2/(4 M^2 sy^3) + (mu B'/M) cos(theta') sigma_theta(t)
// sigma_theta supplied as a sampled history (linear interpolation between
// samples). Experimental output; the printed equations stop short of an
// overlap formula for the CoM widths.
std::vector<CoMWidthSample> evolve_sigma_cm(const CoMWavepacket& w0, double theta_prime,
                                            const std::vector<WidthSample>& sigma_theta_history,
                                            const NDParams& nd, const NVParams& nv,
                                            const FieldConfig& cfg, double duration, double dt);

}  // namespace sgi

#endif
