#include "sgi/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sgi/units.hpp"

namespace sgi {

namespace {

using units::Kind;

struct KeySpec {
  Kind kind;
  const char* fallback;  // default value text
};

// section -> key -> spec; the single source of truth for accepted keys
const std::map<std::string, std::map<std::string, KeySpec>>& schema() {
  static const std::map<std::string, std::map<std::string, KeySpec>> s = {
      {"nd",
       {{"radius", {Kind::length, "25 nm"}},
        {"density", {Kind::density, "3510 kg/m3"}},
        {"nv_distance", {Kind::length, "1 nm"}},
        {"nv_angle", {Kind::angle, "45 deg"}},
        {"chi_per_mass", {Kind::dimensionless, "-6.2e-9"}},  // [m^3/kg]
        {"diamagnetic", {Kind::dimensionless, "off"}},
        {"mu_bohr_magnetons", {Kind::dimensionless, "2.0"}},
        {"zero_field_splitting", {Kind::energy, "2.87 GHz"}},
        {"epsilon", {Kind::energy, "5 MHz"}},
        {"epsilon_phase", {Kind::angle, "0 rad"}}}},
      {"field",
       {{"b0", {Kind::field, "10 G"}},
        {"theta0", {Kind::angle, "auto"}},  // auto = nv_angle / 2
        {"b_grad", {Kind::gradient, "0.2 G/nm"}},
        {"ramp", {Kind::dimensionless, "none"}},
        {"ramp_a_av", {Kind::acceleration, "auto"}},
        {"g_xi", {Kind::acceleration, "0 m/s2"}},
        {"g_zeta", {Kind::acceleration, "0 m/s2"}}}},
      {"sequence",
       {{"t_pulse", {Kind::time, "25 us"}},
        {"t_delay", {Kind::time, "0 us"}},
        {"symmetric", {Kind::dimensionless, "off"}},
        {"arm1_spins", {Kind::dimensionless, "auto"}},
        {"arm2_spins", {Kind::dimensionless, "auto"}},
        {"durations", {Kind::dimensionless, "1,2,1"}}}},  // in units of t_pulse
      {"environment",
       {{"temperature", {Kind::temperature, "ground"}},
        {"tau_c", {Kind::time, "100 us"}}}},
      {"numerics",
       {{"steps_per_pulse", {Kind::dimensionless, "2000"}},
        {"schedule_subdivisions", {Kind::dimensionless, "64"}},
        {"lambda", {Kind::dimensionless, "unity"}},
        {"perp_shifts", {Kind::dimensionless, "off"}},
        {"mc_samples", {Kind::dimensionless, "100000"}},
        {"seed", {Kind::dimensionless, "1"}}}},
  };
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

bool parse_bool(const std::string& v, const std::string& where) {
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(where + ": expected on/off, got '" + v + "'");
}

long parse_int(const std::string& v, const std::string& where) {
  try {
    std::size_t pos = 0;
    const long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + v + "'");
  }
}

std::vector<int> parse_spin_list(const std::string& v, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok == "-1" || tok == "-") out.push_back(-1);
    else if (tok == "0") out.push_back(0);
    else if (tok == "+1" || tok == "1" || tok == "+") out.push_back(+1);
    else throw ConfigError(where + ": spin labels must be -1, 0 or +1, got '" + tok + "'");
  }
  if (out.empty()) throw ConfigError(where + ": empty spin list");
  return out;
}

std::vector<double> parse_number_list(const std::string& v, const std::string& where) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(trim(tok)));
    } catch (const std::exception&) {
      throw ConfigError(where + ": expected numbers, got '" + tok + "'");
    }
  }
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

}  // namespace

Config::Config() {
  for (const auto& [section, keys] : schema())
    for (const auto& [key, spec] : keys) sections_[section][key] = {spec.fallback, 0};
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError(where + ": malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!schema().count(section))
        throw ConfigError(where + ": unknown section '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    if (section.empty()) throw ConfigError(where + ": key outside of any section");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = unquote(trim(s.substr(eq + 1)));
    const auto sec_it = schema().find(section);
    if (!sec_it->second.count(key))
      throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
    cfg.sections_[section][key] = {value, lineno};
  }
  return cfg;
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "': expected section.key=value");
  const std::string path = trim(assignment.substr(0, eq));
  const std::string value = unquote(trim(assignment.substr(eq + 1)));
  const auto dot = path.find('.');
  if (dot == std::string::npos)
    throw ConfigError("override '" + assignment + "': expected section.key=value");
  set(path.substr(0, dot), path.substr(dot + 1), value);
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  const auto sec_it = schema().find(section);
  if (sec_it == schema().end()) throw ConfigError("unknown section '" + section + "'");
  if (!sec_it->second.count(key))
    throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
  sections_[section][key] = {value, 0};
}

ResolvedConfig Config::resolve() const {
  ResolvedConfig rc;
  const auto get = [&](const std::string& section, const std::string& key) -> const Entry& {
    return sections_.at(section).at(key);
  };
  const auto quantity = [&](const std::string& section, const std::string& key) {
    const Entry& e = get(section, key);
    try {
      return units::parse_quantity(e.value, schema().at(section).at(key).kind);
    } catch (const std::exception& ex) {
      throw ConfigError("[" + section + "] " + key +
                        (e.line ? " (line " + std::to_string(e.line) + ")" : "") + ": " +
                        ex.what());
    }
  };

  // nd + nv
  const double radius = quantity("nd", "radius");
  const double density = quantity("nd", "density");
  const double nv_distance = quantity("nd", "nv_distance");
  const double nv_angle = quantity("nd", "nv_angle");
  try {
    rc.nd = NDParams::make(radius, density, nv_distance, nv_angle);
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("[nd]: ") + ex.what());
  }
  rc.nd.chi_per_mass = quantity("nd", "chi_per_mass");
  if (rc.nd.chi_per_mass > 0.0)
    throw ConfigError("[nd] chi_per_mass: must be <= 0 (diamagnetic)");
  rc.nd.diamagnetic_enabled = parse_bool(get("nd", "diamagnetic").value, "[nd] diamagnetic");
  rc.nv.mu = quantity("nd", "mu_bohr_magnetons") * constants::bohr_magneton;
  if (rc.nv.mu <= 0.0) throw ConfigError("[nd] mu_bohr_magnetons: must be > 0");
  rc.nv.zero_field_splitting = quantity("nd", "zero_field_splitting");
  if (rc.nv.zero_field_splitting <= 0.0)
    throw ConfigError("[nd] zero_field_splitting: must be > 0");
  rc.nv.epsilon = quantity("nd", "epsilon");
  if (rc.nv.epsilon < 0.0) throw ConfigError("[nd] epsilon: must be >= 0");
  rc.nv.epsilon_phase = quantity("nd", "epsilon_phase");

  // field
  rc.field.b0 = quantity("field", "b0");
  if (rc.field.b0 < 0.0) throw ConfigError("[field] b0: must be >= 0");
  rc.field.theta0 = get("field", "theta0").value == "auto"
                        ? preparation_bias_angle(nv_angle)
                        : quantity("field", "theta0");
  rc.field.b_grad = quantity("field", "b_grad");
  rc.field.g_xi = quantity("field", "g_xi");
  rc.field.g_zeta = quantity("field", "g_zeta");

  // sequence
  const double t_pulse = quantity("sequence", "t_pulse");
  const double t_delay = quantity("sequence", "t_delay");
  const bool symmetric = parse_bool(get("sequence", "symmetric").value, "[sequence] symmetric");
  if (t_pulse <= 0.0) throw ConfigError("[sequence] t_pulse: must be > 0");
  if (t_delay < 0.0) throw ConfigError("[sequence] t_delay: must be >= 0");
  const std::string arm1_text = get("sequence", "arm1_spins").value;
  const std::string arm2_text = get("sequence", "arm2_spins").value;
  if (arm1_text == "auto" && arm2_text == "auto") {
    rc.seq = SequenceConfig::standard(t_pulse, symmetric, t_delay);
  } else if (arm1_text != "auto" && arm2_text != "auto") {
    const auto spins1 = parse_spin_list(arm1_text, "[sequence] arm1_spins");
    const auto spins2 = parse_spin_list(arm2_text, "[sequence] arm2_spins");
    const auto durs = parse_number_list(get("sequence", "durations").value,
                                        "[sequence] durations");
    if (spins1.size() != durs.size() || spins2.size() != durs.size())
      throw ConfigError("[sequence]: arm spin lists and durations must have equal lengths");
    rc.seq.t_pulse = t_pulse;
    rc.seq.t_delay = t_delay;
    rc.seq.symmetric = symmetric;
    for (std::size_t i = 0; i < durs.size(); ++i) {
      if (durs[i] <= 0.0) throw ConfigError("[sequence] durations: must be > 0");
      rc.seq.arm1.push_back({static_cast<SpinLabel>(spins1[i]), durs[i] * t_pulse});
      rc.seq.arm2.push_back({static_cast<SpinLabel>(spins2[i]), durs[i] * t_pulse});
    }
  } else {
    throw ConfigError("[sequence]: arm1_spins and arm2_spins must be given together");
  }
  try {
    rc.seq.validate();
  } catch (const std::exception& ex) {
    throw ConfigError(std::string("[sequence]: ") + ex.what());
  }

  // ramp (needs nd + sequence for the auto average acceleration)
  const std::string ramp = get("field", "ramp").value;
  if (ramp == "quadratic") {
    RampPolicy rp;
    rp.g_xi = rc.field.g_xi;
    if (get("field", "ramp_a_av").value == "auto") {
      // mean magnetic acceleration of the two arms: mu B'/2M for the
      // asymmetric configuration, 0 for the symmetric one
      rp.a_av = symmetric ? 0.0 : rc.nv.mu * rc.field.b_grad / (2.0 * rc.nd.mass);
    } else {
      rp.a_av = quantity("field", "ramp_a_av");
    }
    rc.field.ramp = rp;
  } else if (ramp != "none") {
    throw ConfigError("[field] ramp: expected none or quadratic, got '" + ramp + "'");
  }

  // environment
  const std::string temp = get("environment", "temperature").value;
  if (temp == "ground") {
    rc.ground_state_prep = true;
  } else {
    rc.ground_state_prep = false;
    rc.temperature = quantity("environment", "temperature");
  }
  rc.tau_c = quantity("environment", "tau_c");

  // numerics
  rc.steps_per_pulse = static_cast<int>(parse_int(get("numerics", "steps_per_pulse").value,
                                                  "[numerics] steps_per_pulse"));
  if (rc.steps_per_pulse < 1) throw ConfigError("[numerics] steps_per_pulse: must be >= 1");
  rc.schedule_subdivisions = static_cast<int>(
      parse_int(get("numerics", "schedule_subdivisions").value,
                "[numerics] schedule_subdivisions"));
  if (rc.schedule_subdivisions < 1)
    throw ConfigError("[numerics] schedule_subdivisions: must be >= 1");
  const std::string lambda = get("numerics", "lambda").value;
  if (lambda == "unity") rc.opts.lambda_mode = LambdaMode::unity;
  else if (lambda == "exact") rc.opts.lambda_mode = LambdaMode::exact;
  else throw ConfigError("[numerics] lambda: expected unity or exact, got '" + lambda + "'");
  rc.opts.include_perp_shifts =
      parse_bool(get("numerics", "perp_shifts").value, "[numerics] perp_shifts");
  const long mc = parse_int(get("numerics", "mc_samples").value, "[numerics] mc_samples");
  if (mc < 2) throw ConfigError("[numerics] mc_samples: must be >= 2");
  rc.mc_samples = static_cast<std::size_t>(mc);
  rc.seed = static_cast<std::uint64_t>(parse_int(get("numerics", "seed").value,
                                                 "[numerics] seed"));

  for (const auto& [section, keys] : sections_)
    for (const auto& [key, entry] : keys) rc.raw[section + "." + key] = entry.value;
  return rc;
}

std::string resolved_config_json(const ResolvedConfig& rc) {
  nlohmann::json j;
  for (const auto& [key, value] : rc.raw) j["config"][key] = value;
  j["si"]["mass_kg"] = rc.nd.mass;
  j["si"]["inertia_kg_m2"] = rc.nd.inertia;
  j["si"]["mu_J_per_T"] = rc.nv.mu;
  j["si"]["b0_T"] = rc.field.b0;
  j["si"]["theta0_rad"] = rc.field.theta0;
  j["si"]["b_grad_T_per_m"] = rc.field.b_grad;
  j["si"]["g_xi"] = rc.field.g_xi;
  j["si"]["g_zeta"] = rc.field.g_zeta;
  j["si"]["t_pulse_s"] = rc.seq.t_pulse;
  j["si"]["ramp"] = rc.field.ramp.has_value();
  if (rc.field.ramp) j["si"]["ramp_a_av"] = rc.field.ramp->a_av;
  return j.dump();
}

}  // namespace sgi
