#include "hodgewave/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Discrete exterior calculus wave simulator"};
  app.require_subcommand(1);

  std::string configPath;
  hodgewave::RunOptions opts;

  auto addCommon = [&](CLI::App* cmd) {
    cmd->add_option("--config", configPath, "configuration file")->required();
    cmd->add_option("--out", opts.outDir, "output directory");
  };

  CLI::App* checkMesh = app.add_subcommand("check-mesh", "mesh diagnostics and self-tests");
  addCommon(checkMesh);

  CLI::App* checkBc = app.add_subcommand("check-bc", "boundary condition admissibility");
  addCommon(checkBc);

  CLI::App* sim = app.add_subcommand("simulate", "run the wave system");
  addCommon(sim);
  sim->add_flag("--unsafe", opts.unsafe, "skip the admissibility gate");
  sim->add_option("--snapshots", opts.snapshotStride, "state snapshot stride");

  CLI::App* conv = app.add_subcommand("converge", "refinement sweep against an analytic solution");
  addCommon(conv);
  conv->add_flag("--unsafe", opts.unsafe, "skip the admissibility gate");

  CLI11_PARSE(app, argc, argv);

  for (const CLI::App* cmd : app.get_subcommands())
    if (cmd->count("--out") > 0) opts.outDirSet = true;

  hodgewave::Config cfg;
  try {
    cfg = hodgewave::Config::fromFile(configPath);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (checkMesh->parsed()) return hodgewave::cmdCheckMesh(cfg, std::cout);
    if (checkBc->parsed()) return hodgewave::cmdCheckBc(cfg, std::cout);
    if (sim->parsed()) return hodgewave::cmdSimulate(cfg, opts, std::cout);
    if (conv->parsed()) return hodgewave::cmdConverge(cfg, opts, std::cout);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 1;
}
