#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mergepath/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace mergepath::cli;
  CLI::App app{"Merging-path experiments for anchored minimax and monotone inclusion methods", "mergepath"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = "figure1";
  std::string suite;

  auto* run = app.add_subcommand("run", "Run every algorithm of a config and write its outputs");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  auto* compare = app.add_subcommand("compare", "Run an algorithm pair and check its merging-path bound");
  compare->add_option("config", config, "Experiment config (JSON)")->required();
  auto* figure1 = app.add_subcommand("figure1", "Reproduce the anchored/AGM path comparison on 4 x1^2 / x2");
  figure1->add_option("--out", out_dir, "Output directory")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "Run an acceptance suite ('all' runs every suite)");
  verify->add_option("suite", suite, "Suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*run) return cmd_run(config, std::cout, std::cerr);
  if (*compare) return cmd_compare(config, std::cout, std::cerr);
  if (*figure1) return cmd_figure1(out_dir, std::cout, std::cerr);
  return cmd_verify(suite, std::cout, std::cerr);
}
