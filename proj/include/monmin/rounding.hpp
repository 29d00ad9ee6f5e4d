#pragma once

#include <string>

namespace monmin {

enum class RoundingMode { HalfAwayFromZero, HalfEven, TowardZero };

/// How one column of a report turns a full-precision value into text.
struct RoundingRule {
  enum class Kind { Decimals, Significant };

  Kind kind = Kind::Decimals;
  int digits = 0;
  RoundingMode mode = RoundingMode::HalfAwayFromZero;
  // Drop trailing fractional zeros (and a bare decimal point) after rounding.
  bool trim_zeros = false;

  static RoundingRule decimals(int n, RoundingMode mode = RoundingMode::HalfAwayFromZero) {
    return {Kind::Decimals, n, mode, false};
  }
  static RoundingRule significant(int n, bool trim = true) {
    return {Kind::Significant, n, RoundingMode::HalfAwayFromZero, trim};
  }

  friend bool operator==(const RoundingRule&, const RoundingRule&) = default;
};

std::string format_rounded(double value, const RoundingRule& rule);

/// Shortest text that parses back to exactly `value`.
std::string format_shortest(double value);

}  // namespace monmin
