#include "support.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "monmin/cli.hpp"
#include "monmin/core.hpp"
#include "monmin/csv.hpp"

namespace monmin::test {

namespace {

std::vector<std::vector<std::string>> read_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto fields = csv::split(line);
    if (!fields) throw std::runtime_error("bad CSV line: " + line);
    records.push_back(std::move(*fields));
  }
  return records;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

int printed_decimals(const std::string& s) {
  const auto dot = s.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(s.size() - dot - 1);
}

}  // namespace

std::filesystem::path source_path(const std::string& relative) {
  return std::filesystem::path(MONMIN_SOURCE_DIR) / relative;
}

std::filesystem::path fixture(const std::string& name) { return source_path("fixtures/" + name); }

std::filesystem::path golden(const std::string& name) { return source_path("tests/golden/" + name); }

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<PrintedCell> read_printed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  auto records = read_csv_records(in);
  std::vector<PrintedCell> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.size() != 3) throw std::runtime_error("printed cell needs key,column,value");
    out.push_back({r[0], r[1], r[2]});
  }
  return out;
}

std::vector<std::string> compare_to_printed(const std::string& rendered_csv, std::span<const PrintedCell> printed,
                                            int key_columns) {
  std::istringstream in(rendered_csv);
  const auto records = read_csv_records(in);
  std::vector<std::string> problems;
  if (records.empty()) return {"rendered table is empty"};

  std::map<std::string, std::size_t> column_index;
  for (std::size_t c = 0; c < records[0].size(); ++c) column_index[records[0][c]] = c;
  std::map<std::string, std::size_t> row_index;
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::string key;
    for (int k = 0; k < key_columns; ++k) key += (k ? "|" : "") + records[r][static_cast<std::size_t>(k)];
    row_index[key] = r;
  }

  for (const auto& cell : printed) {
    const auto row = row_index.find(cell.key);
    const auto col = column_index.find(cell.column);
    if (row == row_index.end() || col == column_index.end()) {
      problems.push_back("missing cell [" + cell.key + "][" + cell.column + "]");
      continue;
    }
    const auto& rendered = records[row->second][col->second];
    const auto got = to_double(rendered);
    const auto want = to_double(cell.value);
    if (!got || !want) {
      problems.push_back("non-numeric cell [" + cell.key + "][" + cell.column + "]: '" + rendered + "'");
      continue;
    }
    const double unit = std::pow(10.0, -printed_decimals(cell.value));
    if (std::abs(*got - *want) > unit * (1.0 + 1e-9)) {
      problems.push_back("[" + cell.key + "][" + cell.column + "] rendered " + rendered + ", printed " + cell.value);
    }
  }
  return problems;
}

ExtremaReport extrema_oracle(std::span<const YearValue> values) {
  struct Run {
    int year;
    double value;
    bool touches_end;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool edge = i == 0 || i + 1 == values.size();
    if (!runs.empty() && runs.back().value == values[i].value) {
      runs.back().touches_end = runs.back().touches_end || edge;
    } else {
      runs.push_back({values[i].year, values[i].value, edge});
    }
  }
  ExtremaReport report;
  for (std::size_t i = 1; i + 1 < runs.size(); ++i) {
    if (runs[i].touches_end) continue;
    const double a = runs[i - 1].value, b = runs[i].value, c = runs[i + 1].value;
    if (b > a && b > c) report.peaks.push_back(runs[i].year);
    if (b < a && b < c) report.troughs.push_back(runs[i].year);
  }
  return report;
}

double m1_monmin_oracle(const AggregateYear& year, double minutes_per_year) {
  const double per_capita = year.gdp / static_cast<double>(year.population);
  return year.m1 / (per_capita / minutes_per_year);
}

bool near_rel(double a, double b, double rel) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale;
}

}  // namespace monmin::test
