// restframe <tube|algebra|orbit|spectrum|entangle|ehrenfest> --config <path> [--seed N] [--out DIR]

#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "drivers.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rest-frame two-body experiments"};
  app.require_subcommand(1);

  std::string config;
  std::uint64_t seed = 42;
  std::string out;
  for (const std::string& name : restframe::cli::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config, "JSON configuration file")->required();
    sub->add_option("--seed", seed, "seed for randomized sampling");
    sub->add_option("--out", out, "output directory (falls back to RESTFRAME_OUT)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();
  return restframe::cli::main_for(experiment, config, seed, out);
}
