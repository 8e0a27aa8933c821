#include "sgi/units.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "sgi/constants.hpp"

namespace sgi::units {

namespace {

struct UnitDef {
  Kind kind;
  double to_si;
};

const std::map<std::string, UnitDef>& unit_table() {
  using namespace sgi::constants;
  static const std::map<std::string, UnitDef> table = {
      {"T", {Kind::field, 1.0}},
      {"mT", {Kind::field, 1e-3}},
      {"uT", {Kind::field, 1e-6}},
      {"G", {Kind::field, gauss}},
      {"mG", {Kind::field, 1e-3 * gauss}},
      {"T/m", {Kind::gradient, 1.0}},
      {"G/m", {Kind::gradient, gauss}},
      {"G/mm", {Kind::gradient, gauss / 1e-3}},
      {"G/um", {Kind::gradient, gauss_per_um}},
      {"G/nm", {Kind::gradient, gauss_per_nm}},
      {"m", {Kind::length, 1.0}},
      {"mm", {Kind::length, 1e-3}},
      {"um", {Kind::length, 1e-6}},
      {"nm", {Kind::length, 1e-9}},
      {"s", {Kind::time, 1.0}},
      {"ms", {Kind::time, 1e-3}},
      {"us", {Kind::time, 1e-6}},
      {"ns", {Kind::time, 1e-9}},
      {"rad", {Kind::angle, 1.0}},
      {"mrad", {Kind::angle, 1e-3}},
      {"deg", {Kind::angle, pi / 180.0}},
      {"K", {Kind::temperature, 1.0}},
      {"mK", {Kind::temperature, 1e-3}},
      {"uK", {Kind::temperature, 1e-6}},
      {"nK", {Kind::temperature, 1e-9}},
      {"m/s2", {Kind::acceleration, 1.0}},
      {"m/s^2", {Kind::acceleration, 1.0}},
      {"J", {Kind::energy, 1.0}},
      {"Hz", {Kind::energy, planck}},
      {"kHz", {Kind::energy, planck * 1e3}},
      {"MHz", {Kind::energy, planck * 1e6}},
      {"GHz", {Kind::energy, planck * 1e9}},
      {"kg/m3", {Kind::density, 1.0}},
      {"kg/m^3", {Kind::density, 1.0}},
      {"g/cm3", {Kind::density, 1e3}},
      {"g/cm^3", {Kind::density, 1e3}},
  };
  return table;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::dimensionless: return "dimensionless";
    case Kind::field: return "magnetic field";
    case Kind::gradient: return "field gradient";
    case Kind::length: return "length";
    case Kind::time: return "time";
    case Kind::angle: return "angle";
    case Kind::temperature: return "temperature";
    case Kind::acceleration: return "acceleration";
    case Kind::energy: return "energy";
    case Kind::density: return "density";
  }
  return "?";
}

double parse_quantity(const std::string& text, Kind kind) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty quantity");

  const char* begin = s.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) throw std::invalid_argument("'" + s + "': not a number");

  const std::string unit = trim(std::string(end));
  if (unit.empty()) {
    if (kind == Kind::dimensionless || kind == Kind::angle) return value;
    throw std::invalid_argument("'" + s + "': missing unit for " +
                                std::string(kind_name(kind)));
  }
  if (kind == Kind::dimensionless)
    throw std::invalid_argument("'" + s + "': unexpected unit on dimensionless value");

  const auto it = unit_table().find(unit);
  if (it == unit_table().end())
    throw std::invalid_argument("'" + s + "': unknown unit '" + unit + "'");
  if (it->second.kind != kind)
    throw std::invalid_argument("'" + s + "': unit '" + unit + "' is a " +
                                kind_name(it->second.kind) + ", expected " + kind_name(kind));
  return value * it->second.to_si;
}

}  // namespace sgi::units
