// Copyright the eddyctl authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <CLI11.hpp>
#include "eddy/studies.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"Boundary control of time-harmonic eddy currents: batch studies"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<int> order;
  std::optional<unsigned long> seed;
  int threads = 1;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-mesh", "Write the configured meshes as Gmsh files"},
      {"validate", "Convergence study against the exact electrode field"},
      {"grad-check", "Finite-difference check of the reduced gradient"},
      {"optimize", "BFGS on every level, gaps against the finest level"}};
  for (const auto &[name, help] : commands)
  {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->required();
    sub->add_option("--order", order, "Nedelec order k (0 or 1), overrides the config");
    sub->add_option("--seed", seed, "Seed for random probe directions");
    sub->add_option("--threads", threads, "Mesh levels solved concurrently")->check(CLI::PositiveNumber);
  }
  CLI11_PARSE(app, argc, argv);

  try
  {
    eddy::RunConfig config = eddy::RunConfig::FromFile(config_path);
    if (order)
    {
      config.order = *order;
    }
    if (seed)
    {
      config.seed = *seed;
    }
    config.threads = threads;

    const std::string command = app.get_subcommands().front()->get_name();
    eddy::StudyOutput out;
    if (command == "gen-mesh")
    {
      out = eddy::CmdGenMesh(config, out_dir);
    }
    else if (command == "validate")
    {
      out = eddy::CmdValidate(config, out_dir);
    }
    else if (command == "grad-check")
    {
      out = eddy::CmdGradCheck(config, out_dir);
    }
    else
    {
      out = eddy::CmdOptimize(config, out_dir);
    }
    for (const auto &c : out.checks)
    {
      std::cout << (c.passed ? "ok     " : "FAILED ") << c.name;
      if (!c.detail.empty())
      {
        std::cout << " (" << c.detail << ")";
      }
      std::cout << "\n";
    }
    return out.Passed() ? 0 : 1;
  }
  catch (const std::exception &e)
  {
    std::cerr << "eddyctl: " << e.what() << "\n";
    return 2;
  }
}
