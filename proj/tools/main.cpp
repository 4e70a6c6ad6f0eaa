#include <iostream>

#include <CLI11.hpp>

#include "app/runner.hpp"

int main(int argc, char** argv) {
  transineq::app::RunFlags flags;
  std::string out;
  CLI::App app{"Run functional-inequality checks described by a JSON config"};
  app.add_option("--config", flags.config_path, "Config file")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", flags.seed, "Seed for estimator restarts")->capture_default_str();
  auto* out_opt = app.add_option("--out", out, "Output directory (default ./out)");
  app.add_option("--jobs", flags.jobs, "Worker threads (default: number of cores)")->check(CLI::NonNegativeNumber);
  app.add_flag("--strict", flags.strict, "Treat skipped degenerate members as failures");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : transineq::app::kExitError;
  }
  if (out_opt->count() > 0) flags.out_dir = out;
  return transineq::app::run(flags, std::cerr);
}
