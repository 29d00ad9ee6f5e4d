#pragma once

// Table construction and rendering.
//
// Builders fill a TableData with full-precision values; render_table applies
// the per-column rounding of a TableSpec exactly once, on the way out.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "monmin/core.hpp"
#include "monmin/ingest.hpp"
#include "monmin/rounding.hpp"
#include "monmin/series.hpp"

namespace monmin {

enum class TableId { T1, T2, T3, T4, T4B, T5 };

/// Accepts "1", "2", "3", "4", "4b" (or "4B"), "5".
std::optional<TableId> parse_table_id(std::string_view text);
std::string_view to_string(TableId id) noexcept;

enum class ColumnKind { Text, Integer, Amount, Cm, InverseCm, Rate, MonMin, Percent };

struct Column {
  std::string header;
  ColumnKind kind = ColumnKind::Text;
  // Values are stored absolute and divided by this only for display.
  double divisor = 1.0;
};

using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct TableData {
  TableId id = TableId::T1;
  std::string title;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
};

/// Rounding per column kind, with optional per-header overrides. Text and
/// Integer columns print verbatim; every other column must resolve to
/// exactly one rule.
struct TableSpec {
  TableId id = TableId::T1;
  std::map<ColumnKind, RoundingRule> rules;
  std::map<std::string, RoundingRule> overrides;

  const RoundingRule* rule_for(const Column& column) const;
};

TableSpec default_spec(TableId id);

enum class TableFormat { Csv, Text };

/// Deterministic: identical inputs give byte-identical output. Throws
/// ShapeMismatch when the data does not fit the spec.
std::string render_table(const TableSpec& spec, const TableData& data, TableFormat format);

/// Cm values available to the basket tables, one per currency.
class CmBook {
 public:
  /// Replaces any earlier value for the same currency.
  void set(MonMinValue cm);

  const MonMinValue* find(const CurrencyCode& currency) const noexcept;
  /// Throws UnknownCurrency when absent.
  const MonMinValue& at(const CurrencyCode& currency) const;

  bool empty() const noexcept { return values_.empty(); }

 private:
  std::vector<MonMinValue> values_;
};

TableData build_table1(std::span<const EconomySnapshot> economies, const TimeStandard& standard);

/// One row for the reference currency, then one per rate whose base is the
/// reference currency, each carried through cross_cm.
TableData build_table2(const MonMinValue& reference, const RateTable& rates);

/// Raw prices and MonMin prices of one basket, one column pair per currency.
TableData build_table3(const Basket& basket, const CmBook& cms);

/// MonMin prices, one column per (country, currency) context.
TableData build_table4(std::span<const Basket> baskets, const CmBook& cms);

/// Prices as percent of the salary of the same context.
TableData build_table4b(std::span<const Basket> baskets, const CmBook& cms);

/// Money stock, money stock in MonMin and GDP, in billions.
TableData build_table5(const AggregateSeries& series);

/// Writes `year,m1_currency,m1_monmin,gdp_currency` rows at full precision,
/// plus an `extremum` column (peak/trough/empty) when markers are given.
void emit_plot_data(std::ostream& out, const AggregateSeries& series, std::span<const YearValue> monmin,
                    const ExtremaReport* markers = nullptr);

}  // namespace monmin
