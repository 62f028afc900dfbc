#ifndef QUADRK_IO_HPP
#define QUADRK_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "quadrk/jacobian.hpp"

namespace quadrk {

/// Input error with a 1-based line and column (column 0 when unknown).
class SourceError : public Error {
 public:
  SourceError(ErrorCode code, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// Matrix file:
//   field Q | GF(p)
//   vars n
//   matrix m k
//   m rows of k comma-separated polynomials of degree <= 1
// Map file: same, with `map m` and lines `H<i> = expr` (degree <= 2).
// Blank lines and lines starting with '#' are ignored.

DegOneMatrix parse_matrix_text(std::string_view text);
QuadMap parse_map_text(std::string_view text);

using InputObject = std::variant<DegOneMatrix, QuadMap>;

/// Dispatches on the third header line.
InputObject parse_input_text(std::string_view text);

std::string format_matrix(const DegOneMatrix& m);
std::string format_map(const QuadMap& h);

/// Throws IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace quadrk

#endif  // QUADRK_IO_HPP
