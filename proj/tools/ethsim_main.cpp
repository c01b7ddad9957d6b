#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ethsim/runner.hpp"
#include "ethsim/scenario.hpp"

namespace {

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ETHSIM_OUT"); env && *env) return env;
  return "out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ethsim: a governed two-goal robot/human arena simulator"};
  app.require_subcommand(1);

  std::string preset_name, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  bool plot = false;
  int n_seeds = 50;

  CLI::App* run_cmd = app.add_subcommand("run", "simulate one scenario");
  auto* run_preset = run_cmd->add_option("--preset", preset_name,
                                         "built-in scenario name");
  auto* run_config = run_cmd->add_option("--config", config_path,
                                         "scenario JSON file");
  run_preset->excludes(run_config);
  run_cmd->add_option("--seed", seed, "override the scenario seed");
  run_cmd->add_option("--out", out_dir,
                      "output directory (default: $ETHSIM_OUT or ./out)");
  run_cmd->add_flag("--plot", plot, "also write an SVG plot");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a multi-human preset across seeds");
  sweep_cmd->add_option("--preset", preset_name, "built-in scenario name")
      ->required();
  sweep_cmd->add_option("--seeds", n_seeds, "number of seeds (1..N)");
  sweep_cmd->add_option("--out", out_dir,
                        "output directory (default: $ETHSIM_OUT or ./out)");

  CLI::App* presets_cmd = app.add_subcommand("presets", "built-in scenarios");
  presets_cmd->require_subcommand(1);
  CLI::App* list_cmd = presets_cmd->add_subcommand("list", "list preset names");
  CLI::App* dump_cmd =
      presets_cmd->add_subcommand("dump", "print a preset as JSON");
  std::string dump_name;
  dump_cmd->add_option("name", dump_name, "preset name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (preset_name.empty() == config_path.empty()) {
        std::fprintf(stderr, "run: pass exactly one of --preset / --config\n");
        return 1;
      }
      ethsim::Scenario sc = preset_name.empty()
                                ? ethsim::load_scenario_file(config_path)
                                : ethsim::preset(preset_name);
      ethsim::RunOptions opt;
      opt.out_dir = resolve_out_dir(out_dir);
      opt.plot = plot;
      opt.seed_override = seed;
      ethsim::RunResult res = ethsim::run(sc, opt);
      std::printf("%s\n", ethsim::run_result_to_json(res).dump(2).c_str());
    } else if (sweep_cmd->parsed()) {
      ethsim::RunOptions opt;
      opt.out_dir = resolve_out_dir(out_dir);
      ethsim::SweepResult res = ethsim::sweep(preset_name, n_seeds, opt);
      std::printf("%s\n", ethsim::sweep_result_to_json(res).dump(2).c_str());
    } else if (list_cmd->parsed()) {
      for (const auto& name : ethsim::preset_names())
        std::printf("%s\n", name.c_str());
    } else if (dump_cmd->parsed()) {
      std::printf("%s\n",
                  ethsim::serialize(ethsim::preset(dump_name)).dump(2).c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
