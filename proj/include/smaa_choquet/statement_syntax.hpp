#pragma once

// Text form of preference statements:
//
//   imp: g1 > g2      imp: g1 >= g2      imp: g1 = g2
//   synergy: g1,g2    redundancy: g2,g4
//   alt: a16 > a2     alt: a1 >= a2      alt: a1 = a2
//   int: (a1,a2) > (a3,a4)               int: (a1,a2) = (a3,a4)
//
// Whitespace around tokens is ignored; criteria and alternatives are named
// by label.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smaa_choquet/preference.hpp"

namespace smaa_choquet {

class StatementSyntaxError : public std::invalid_argument {
 public:
  StatementSyntaxError(const std::string& what, std::size_t column)
      : std::invalid_argument(what), column_(column) {}
  /// 0-based character offset inside the statement text.
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

PreferenceStatement parse_statement(std::string_view text,
                                    const std::vector<std::string>& criteria,
                                    const std::vector<std::string>& alternatives);

/// Canonical text; parse_statement(format_statement(s)) == s.
std::string format_statement(const PreferenceStatement& statement,
                             const std::vector<std::string>& criteria,
                             const std::vector<std::string>& alternatives);

}  // namespace smaa_choquet
