#ifndef QUADRK_TEXT_HPP
#define QUADRK_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "quadrk/poly.hpp"

namespace quadrk {

/// Parse failure with a 1-based column into the parsed text.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t column, const std::string& what)
      : Error(code, "column " + std::to_string(column) + ": " + what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Parses a polynomial expression:
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := int ['/' int] | 'x' k ['^' e]
/// Whitespace is insignificant; variables must lie in x1..x_nvars.
Poly parse_poly(std::string_view text, FieldSpec field, std::size_t nvars);

/// Parses a single scalar literal ("-3", "7/2").
Scalar parse_scalar(std::string_view text, FieldSpec field);

inline std::string format_poly(const Poly& p) { return p.to_string(); }

}  // namespace quadrk

#endif  // QUADRK_TEXT_HPP
