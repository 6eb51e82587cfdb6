#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oqt/io/config.hpp"
#include "oqt/io/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  int particles = 0;
  bool seed_set = false;
  bool out_set = false;
  bool particles_set = false;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "override the configured seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--out", args.out, "override the output directory")
      ->each([&args](const std::string&) { args.out_set = true; });
  cmd->add_option("--particles", args.particles, "override the particle count")
      ->each([&args](const std::string&) { args.particles_set = true; });
}

int execute(const std::string& mode_name, const CommonArgs& args) {
  nlohmann::json j = oqt::load_json_file(args.config_path);

  // Overrides land in the JSON before validation so they face the same checks
  // as file-borne values.
  if (args.seed_set) j["seed"] = args.seed;
  if (args.out_set) j["out"] = args.out;
  if (args.particles_set) j["particles"] = args.particles;

  const oqt::RunConfig cfg = oqt::config_from_json(j);
  if (oqt::mode_name(cfg.mode) != mode_name)
    throw std::runtime_error("config mode '" + oqt::mode_name(cfg.mode) +
                             "' does not match subcommand '" + mode_name + "'");
  return oqt::run(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational gate-set tomography toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> modes{"simulate", "infer", "rb",
                                       "statetomo", "dynamics", "report"};
  const std::vector<std::string> descriptions{
      "draw synthetic data from a configured truth",
      "run sequential Monte Carlo inference on sequence counts",
      "benchmarking decay estimation with credible intervals",
      "rebit state estimation against a direct frequency read",
      "closed-algebra evolution and generator learning demos",
      "score an existing checkpoint against a dataset"};

  std::vector<CommonArgs> args(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
    attach_common(app.add_subcommand(modes[i], descriptions[i]), args[i]);

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (app.get_subcommand(modes[i])->parsed()) return execute(modes[i], args[i]);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
