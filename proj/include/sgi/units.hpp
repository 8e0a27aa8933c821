#ifndef SGI_UNITS_HPP
#define SGI_UNITS_HPP

#include <string>

// Config values carry explicit unit suffixes ("10 G", "0.2 G/nm", "25 us");
// everything is converted to SI at parse time. Each key declares its
// quantity kind, and a value with a unit from a different kind is rejected.

namespace sgi::units {

enum class Kind {
  dimensionless,
  field,         // T
  gradient,      // T/m
  length,        // m
  time,          // s
  angle,         // rad
  temperature,   // K
  acceleration,  // m/s^2
  energy,        // J; frequency units mean h * f
  density,       // kg/m^3
};

// Parse "<number> [unit]" into SI. Throws std::invalid_argument with a
// descriptive message on malformed numbers, unknown units, or kind mismatch.
double parse_quantity(const std::string& text, Kind kind);

const char* kind_name(Kind kind);

}  // namespace sgi::units

#endif
