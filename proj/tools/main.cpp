#include "skraw/cli.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  namespace sc = skraw::cli;
  CLI::App app{"Multivariate super Krawtchouk polynomials: evaluation and identity checks"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  sc::RunConfig cfg;
  std::string command;
  std::string format = "json";
  std::vector<std::uint64_t> gen;
  int odd_degree = -1;

  app.add_option("command", command, "validate | gen-params | eval | transition | verify | fock")
      ->required()
      ->check(CLI::IsMember({"validate", "gen-params", "eval", "transition", "verify", "fock"}));
  auto* params = app.add_option("--params", cfg.params_path, "Parameter file (JSON)");
  auto* gen_opt = app.add_option("--gen", gen, "Generate random admissible parameters: m n seed")->expected(3);
  params->excludes(gen_opt);
  app.add_option("--degree", cfg.degree, "Total degree D")->check(CLI::NonNegativeNumber);
  app.add_option("--odd-degree", odd_degree, "Odd degree d")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Sampler seed");
  app.add_option("--suite", cfg.suite, "Identity suite for verify")->check(CLI::IsMember(sc::suite_names()));
  app.add_option("--out", cfg.out_path, "Output file (default stdout)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--samples", cfg.samples, "Number of samples for fock");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sc::kExitUsage;
  }

  cfg.command = *sc::parse_command(command);
  cfg.format = *sc::parse_format(format);
  if (odd_degree >= 0) cfg.odd_degree = odd_degree;
  if (!gen.empty())
    cfg.gen = sc::GenSpec{static_cast<int>(gen[0]), static_cast<int>(gen[1]), gen[2]};
  return sc::run(cfg, std::cout, std::cerr);
}
