#pragma once

// Command-line front end, kept free of argument parsing so it can be driven
// directly from tests.

#include "skraw/params.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace skraw::cli {

enum class Command { validate, gen_params, eval, transition, verify, fock };
enum class Format { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

struct GenSpec {
  int m = 0;
  int n = 0;
  std::uint64_t seed = 0;
};

struct RunConfig {
  Command command = Command::verify;
  std::optional<std::string> params_path;
  std::optional<GenSpec> gen;
  int degree = 2;
  std::optional<int> odd_degree;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string suite = "all";
  std::optional<std::string> out_path;
  Format format = Format::json;
  std::size_t samples = 0;
};

std::optional<Command> parse_command(const std::string& name);
std::optional<Format> parse_format(const std::string& name);

/// Names accepted by --suite, "all" last.
const std::vector<std::string>& suite_names();

/// Even tuple from seed, odd tuple from seed + 1.
ParamSet generated_params(const GenSpec& spec);

/// Runs one command; the report goes to `out` (or the --out file), diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace skraw::cli
