// sgi: Stern-Gerlach interferometry with a levitated nanodiamond.
// Subcommands: run (single simulation), sweep (parameter sweeps and named
// figure experiments), validate (built-in oracle suite).
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 validation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgi/config.hpp"
#include "sgi/experiments.hpp"
#include "sgi/units.hpp"
#include "sgi/validate.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_validation = 4;

sgi::Config load_config(const std::string& path, const std::vector<std::string>& sets) {
  sgi::Config cfg = path.empty() ? sgi::Config() : sgi::Config::from_file(path);
  for (const auto& s : sets) cfg.apply_override(s);
  return cfg;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw sgi::ConfigError("cannot open output file '" + path + "'");
  return file;
}

sgi::units::Kind variable_kind(const std::string& var) {
  using sgi::units::Kind;
  if (var == "theta0") return Kind::angle;
  if (var == "omega_T") return Kind::dimensionless;
  if (var == "b0") return Kind::field;
  if (var == "b_grad") return Kind::gradient;
  if (var == "g_xi") return Kind::acceleration;
  if (var == "d") return Kind::length;
  if (var == "t_theta") return Kind::temperature;
  throw sgi::ConfigError("sweep variable '" + var + "' not recognized");
}

nlohmann::json table_json(const sgi::Table& t) {
  nlohmann::json j;
  j["comments"] = t.comments;
  j["columns"] = t.columns;
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) {
      if (std::holds_alternative<double>(v)) r.push_back(std::get<double>(v));
      else if (std::holds_alternative<long>(v)) r.push_back(std::get<long>(v));
      else r.push_back(std::get<std::string>(v));
    }
    j["rows"].push_back(r);
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stern-Gerlach interferometer simulation for a levitated nanodiamond"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json", trajectory_path;
  std::vector<std::string> sets;
  long long seed = -1;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file");
    cmd->add_option("--set", sets, "override, section.key=value")->take_all();
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--seed", seed, "random seed override");
    cmd->add_option("--threads", threads, "worker threads for sweeps");
  };

  CLI::App* run = app.add_subcommand("run", "single SGI simulation, JSON summary");
  add_common(run);
  run->add_option("--format", format, "json (summary) or csv (trajectory)")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--trajectory", trajectory_path, "also write the trajectory CSV here");
  int traj_stride = 16;
  run->add_option("--trajectory-stride", traj_stride, "sample stride for trajectory output");
  std::string lambda_mode, spin_arm1, spin_arm2, ramp_mode;
  run->add_option("--lambda", lambda_mode, "unity|exact (shorthand for numerics.lambda)")
      ->check(CLI::IsMember({"unity", "exact"}));
  run->add_option("--ramp", ramp_mode, "none|quadratic (shorthand for field.ramp)")
      ->check(CLI::IsMember({"none", "quadratic"}));
  run->add_option("--spin-arm1", spin_arm1, "comma spin labels for arm 1, e.g. -1,0,-1");
  run->add_option("--spin-arm2", spin_arm2, "comma spin labels for arm 2");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep or named experiment, CSV");
  add_common(sweep);
  std::string experiment, variable, min_text, max_text;
  int n_points = 0;
  bool log_scale = false;
  sweep->add_option("--experiment", experiment, "fig3|fig4|fig5|fig6|fig7|fig8|fig9|fig10");
  sweep->add_option("--var", variable, "theta0|omega_T|b0|b_grad|g_xi|d|t_theta");
  sweep->add_option("--min", min_text, "range start, with units (e.g. '1 G')");
  sweep->add_option("--max", max_text, "range end, with units");
  sweep->add_option("--points", n_points, "number of sweep points");
  sweep->add_flag("--log", log_scale, "logarithmic spacing");
  std::string sweep_format = "csv";
  sweep->add_option("--format", sweep_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* validate = app.add_subcommand("validate", "run the built-in oracle suite");
  bool quick = false;
  validate->add_flag("--quick", quick, "reduced grids and sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return exit_config;
  }

  try {
    if (validate->parsed()) {
      const auto results = sgi::run_oracle_suite({quick});
      bool all_pass = true;
      for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("[%s] %-55s worst %.3e (tol %.0e) %s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.worst, r.tolerance, r.detail.c_str());
      }
      return all_pass ? exit_ok : exit_validation;
    }

    sgi::Config cfg = load_config(config_path, sets);
    if (seed >= 0)
      cfg.set("numerics", "seed", std::to_string(seed));

    if (run->parsed()) {
      if (!lambda_mode.empty()) cfg.set("numerics", "lambda", lambda_mode);
      if (!ramp_mode.empty()) cfg.set("field", "ramp", ramp_mode);
      if (!spin_arm1.empty()) cfg.set("sequence", "arm1_spins", spin_arm1);
      if (!spin_arm2.empty()) cfg.set("sequence", "arm2_spins", spin_arm2);
      const sgi::ResolvedConfig rc = cfg.resolve();

      std::ofstream file;
      std::ostream& out = open_out(out_path, file);
      if (format == "csv") {
        sgi::trajectory_table(rc, traj_stride).write_csv(out);
      } else {
        out << sgi::run_summary_json(rc) << "\n";
      }
      if (!trajectory_path.empty()) {
        std::ofstream tf(trajectory_path);
        if (!tf) throw sgi::ConfigError("cannot open '" + trajectory_path + "'");
        sgi::trajectory_table(rc, traj_stride).write_csv(tf);
      }
      return exit_ok;
    }

    // sweep
    const std::uint64_t used_seed = cfg.resolve().seed;
    std::optional<sgi::SweepSpec> range;
    if (!variable.empty() || !min_text.empty() || !max_text.empty() || n_points > 0) {
      sgi::SweepSpec spec;
      spec.variable = variable;
      if (spec.variable.empty() && !experiment.empty())
        throw sgi::ConfigError("--min/--max/--points with an experiment also need --var");
      const sgi::units::Kind kind = variable_kind(spec.variable);
      if (min_text.empty() || max_text.empty() || n_points <= 0)
        throw sgi::ConfigError("a sweep needs --var, --min, --max and --points");
      spec.min = sgi::units::parse_quantity(min_text, kind);
      spec.max = sgi::units::parse_quantity(max_text, kind);
      spec.n_points = n_points;
      spec.log_scale = log_scale;
      range = spec;
    }

    sgi::Table table;
    if (!experiment.empty()) {
      table = sgi::experiment_table(experiment, cfg, range, threads, used_seed);
    } else if (range) {
      table = sgi::sweep_table(cfg, *range, threads, used_seed);
    } else {
      throw sgi::ConfigError("sweep needs --experiment or --var/--min/--max/--points");
    }

    std::ofstream file;
    std::ostream& out = open_out(out_path, file);
    if (sweep_format == "json") out << table_json(table).dump(2) << "\n";
    else table.write_csv(out);
    return exit_ok;
  } catch (const sgi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}
