#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monmin/core.hpp"

namespace monmin::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/// Everything a command can be told, from flags, MONMIN_TETCY or a config
/// file (flags win).
struct CliConfig {
  double tetcy = kMinutesPerYear;
  std::string format = "text";
  std::string output;

  std::string economies;
  std::string rates;
  std::string basket;
  std::string series;
  std::string plot_out;

  std::string country;
  std::string currency;
  // Each entry is either a bare value or CODE=VALUE.
  std::vector<std::string> cm;
  bool check_currencies = false;

  std::string table;
  // HEADER=DIGITS, fixed decimals for one report column.
  std::vector<std::string> round;
  std::optional<int> decimals;

  double amount = 0.0;
  double rate = 0.0;
  double ref = 0.0;
  double local = 0.0;
  bool extrema = false;
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace monmin::cli
