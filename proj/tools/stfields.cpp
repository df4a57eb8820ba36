// stfields: simulate, tabulate and verify space-time covariance models on spheres.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using stfields::cli::Format;
  stfields::cli::Options opts;
  std::string out_dir = ".";
  std::string config;
  std::uint64_t seed = 0;
  int threads = 0;
  int d_lift = 0;
  int n = 0;
  int d = 0;

  CLI::App app{"Isotropic space-time random fields on spheres"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Seed (overrides the config)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  std::string format = "csv";
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (default: STFIELDS_THREADS)")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("simulate", "Draw realizations of the truncated series field");
  CLI::App* cov = app.add_subcommand("cov", "Tabulate C(theta; t)");
  cov->add_flag("--series", opts.series, "Add truncated-series and residual columns");
  cov->add_option("--d-lift", d_lift, "Re-expand an infinite-sphere model on S^d")->check(CLI::Range(2, 64));
  app.add_subcommand("verify", "Run checks or the acceptance suite; exit 1 on failure");
  CLI::App* expand = app.add_subcommand("expand", "Coefficients of x^n in Gegenbauer polynomials on S^d");
  expand->add_option("--n", n, "Power")->check(CLI::NonNegativeNumber);
  expand->add_option("--d", d, "Sphere dimension")->check(CLI::Range(2, 1024));
  app.add_subcommand("extract", "Recover level coefficients from a simulated S^2 field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : stfields::cli::kExitConfigError;
  }

  if (app.count("--config")) opts.config = config;
  if (app.count("--seed")) opts.seed = seed;
  if (app.count("--threads")) opts.threads = threads;
  opts.out = out_dir;
  opts.format = format == "json" ? Format::Json : Format::Csv;
  if (cov->count("--d-lift")) opts.d_lift = d_lift;
  if (expand->count("--n")) opts.n = n;
  if (expand->count("--d")) opts.d = d;

  const std::string command = app.get_subcommands().front()->get_name();
  return stfields::cli::run(command, opts, std::cout, std::cerr);
}
