#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "radcov/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "radcov: coverage evaluation and camera placement for triangle-meshed "
      "objects"};
  app.require_subcommand(1);

  std::string config_path;
  std::string poses_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int max_cameras = 1;

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "score a fixed camera deployment");
  evaluate->add_option("--config", config_path, "run configuration (json)")
      ->required();
  evaluate->add_option("--poses", poses_path, "camera pose list (json)")
      ->required();

  CLI::App* optimize =
      app.add_subcommand("optimize", "search camera poses with the elitist ga");
  optimize->add_option("--config", config_path, "run configuration (json)")
      ->required();

  CLI::App* heuristic = app.add_subcommand(
      "heuristic", "grow a deployment one camera at a time");
  heuristic->add_option("--config", config_path, "run configuration (json)")
      ->required();
  heuristic
      ->add_option("--max-cameras", max_cameras,
                   "largest deployment size to grow")
      ->required();

  for (CLI::App* sub : {evaluate, optimize, heuristic}) {
    sub->add_option("--out-dir", out_dir,
                    "output directory (overrides the config)");
    sub->add_option("--seed", seed, "seed override");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return radcov::kExitConfigError;
  }

  try {
    radcov::RunConfig config = radcov::load_config(config_path);
    CLI::App* active = app.get_subcommands().front();
    if (active->count("--seed") > 0) {
      config.seed = seed;
      config.iga.seed = seed;
    }
    if (active->count("--out-dir") > 0) config.out_dir = out_dir;
    if (active == evaluate)
      return radcov::cmd_evaluate(config, poses_path, std::cout);
    if (active == optimize) return radcov::cmd_optimize(config, std::cout);
    return radcov::cmd_heuristic(config, max_cameras, std::cout);
  } catch (const radcov::ConfigError& e) {
    std::cout << "error: " << e.what() << "\n";
    return radcov::kExitConfigError;
  } catch (const radcov::ParseError& e) {
    std::cout << "error: " << e.what() << "\n";
    return radcov::kExitConfigError;
  }
}
