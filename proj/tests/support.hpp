#pragma once

// Shared test helpers: fixture paths, the golden-table comparator and the
// independent oracles the unit and acceptance suites check against.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "monmin/series.hpp"

namespace monmin::test {

std::filesystem::path source_path(const std::string& relative);
std::filesystem::path fixture(const std::string& name);
std::filesystem::path golden(const std::string& name);

/// Runs the CLI in-process.
struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};
CliResult run_cli(const std::vector<std::string>& args);

/// A figure as printed in a published table: row key, column header, text.
struct PrintedCell {
  std::string key;
  std::string column;
  std::string value;
};
std::vector<PrintedCell> read_printed(const std::filesystem::path& path);

/// Compares a rendered CSV table against printed figures. Row keys are the
/// first `key_columns` cells joined by '|'. Each figure must match within one
/// unit of its last printed digit. Returns one message per mismatch; an
/// empty result means every printed figure was found and matched.
std::vector<std::string> compare_to_printed(const std::string& rendered_csv, std::span<const PrintedCell> printed,
                                            int key_columns);

/// Brute-force extrema: collapse runs of equal values to their first index,
/// then scan every interior triple of the collapsed sequence.
ExtremaReport extrema_oracle(std::span<const YearValue> values);

/// M1 divided by that year's Cm, where Cm is GDP per head per minute.
double m1_monmin_oracle(const AggregateYear& year, double minutes_per_year);

bool near_rel(double a, double b, double rel);

}  // namespace monmin::test
