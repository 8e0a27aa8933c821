#ifndef SGI_CONFIG_HPP
#define SGI_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "sgi/dynamics.hpp"

// Key-value configuration with flat sections (nd, field, sequence,
// environment, numerics) and explicit unit suffixes, e.g.
//
//   [field]
//   b0     = "10 G"
//   b_grad = "0.2 G/nm"
//
// Unknown sections or keys are errors, as are unit-kind mismatches. Every
// output file embeds the fully resolved configuration for reproducibility.

namespace sgi {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ResolvedConfig {
  NDParams nd;
  NVParams nv;
  FieldConfig field;
  SequenceConfig seq;
  ModelOptions opts;

  bool ground_state_prep = true;  // rotational preparation
  double temperature = 0.0;       // [K] when thermal
  double tau_c = 100e-6;          // spin coherence time [s], for warnings

  int steps_per_pulse = 2000;
  int schedule_subdivisions = 64;  // piecewise-constant omega(t) resolution
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;

  // flat section.key -> value text, defaults filled in
  std::map<std::string, std::string> raw;
};

class Config {
 public:
  // Built-in defaults: the 25 nm ND test case, asymmetric sequence,
  // T = 25 us, B0 = 10 G, B' = 0.2 G/nm.
  Config();

  static Config from_file(const std::string& path);  // throws ConfigError
  // "section.key=value" command-line override
  void apply_override(const std::string& assignment);
  void set(const std::string& section, const std::string& key, const std::string& value);

  ResolvedConfig resolve() const;  // throws ConfigError on semantic problems

 private:
  struct Entry {
    std::string value;
    int line = 0;  // 0 = default or override
  };
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

// Single-line JSON rendering of the resolved configuration (provenance).
std::string resolved_config_json(const ResolvedConfig& rc);

}  // namespace sgi

#endif
