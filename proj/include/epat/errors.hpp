#pragma once

#include <stdexcept>
#include <string>

namespace epat {

// Bad arguments: out-of-range class ids, non-bijective permutations, ragged input.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A guard against combinatorial blowup was hit (order, class-count or enumeration caps).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Pattern text that does not parse; carries a 1-based line and token column.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

}  // namespace epat
