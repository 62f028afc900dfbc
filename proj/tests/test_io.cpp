#include "doctest.h"
#include "quadrk/fuzz.hpp"
#include "quadrk/io.hpp"

using namespace quadrk;

namespace {

SourceError error_of(std::string_view text) {
  try {
    parse_input_text(text);
  } catch (const SourceError& e) {
    return e;
  }
  FAIL("no error for:\n" << text);
  return SourceError(ErrorCode::InternalContradiction, 0, 0, "");
}

}  // namespace

TEST_CASE("matrix files") {
  const auto m = parse_matrix_text("field GF(2)\nvars 3\nmatrix 3 3\n0, x3, x2\nx3, 0, x1\nx2, x1, 0\n");
  CHECK(m == DegOneMatrix::parse(FieldSpec::prime(2), 3, {{"0", "x3", "x2"}, {"x3", "0", "x1"}, {"x2", "x1", "0"}}));
  CHECK(parse_matrix_text(format_matrix(m)) == m);

  const auto c = parse_matrix_text("# comment\n\nfield Q\r\nvars 2\n  matrix 1 2\n\n# row\n 1/2*x1 - 3 ,x2\n");
  CHECK(c.entry(0, 0).to_string() == "1/2*x1 - 3");
}

TEST_CASE("map files") {
  const auto h = parse_map_text("field Q\nvars 4\nmap 4\nH2 = x1\nH1 = 0\nH3 = x1^2\nH4 = x1*x2 - 1/2*x3\n");
  CHECK(h == fuzz::example_b());
  CHECK(parse_map_text(format_map(h)) == h);
  const auto in = parse_input_text(format_map(h));
  CHECK(std::holds_alternative<QuadMap>(in));
}

TEST_CASE("input errors carry locations") {
  auto e = error_of("field Q\nvars 2\nmatrix 2 2\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.line() == 3);

  e = error_of("field Q\nvars 2\nmatrix 1 2\nx1^2, 0\n");
  CHECK(e.code() == ErrorCode::DegreeTooHigh);
  CHECK(e.line() == 4);
  CHECK(e.column() == 1);

  e = error_of("field Q\nvars 2\nmatrix 1 2\nx1, x2 + * x1\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  CHECK(e.line() == 4);
  CHECK(e.column() == 10);

  e = error_of("field Q\nvars 2\nmatrix 1 2\nx1, x3\n");
  CHECK(e.code() == ErrorCode::UnknownVariable);
  CHECK(e.column() == 5);

  e = error_of("field Q\nvars 2\nmatrix 1 3\nx1, x2\n");
  CHECK(e.code() == ErrorCode::SyntaxError);

  e = error_of("field GF(4)\nvars 2\nmatrix 1 2\nx1, x2\n");
  CHECK(e.code() == ErrorCode::FieldError);
  CHECK(e.line() == 1);
  CHECK(e.column() == 7);

  e = error_of("field GF(3)\nvars 2\nmatrix 1 2\nx1, 1/3\n");
  CHECK(e.code() == ErrorCode::NonCanonicalCoefficient);

  e = error_of("field Q\nvars two\nmatrix 1 2\nx1, x2\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 6);

  e = error_of("field Q\nvars 2\nmap 2\nH1 = x1^3\nH2 = 0\n");
  CHECK(e.code() == ErrorCode::DegreeTooHigh);
  e = error_of("field Q\nvars 2\nmap 2\nH1 = x1\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  e = error_of("field Q\nvars 2\nmap 2\nH1 = x1\nH1 = x2\n");
  CHECK(e.line() == 5);
  e = error_of("field Q\nvars 2\nmap 1\nG1 = x1\n");
  CHECK(e.code() == ErrorCode::SyntaxError);
  e = error_of("field Q\nvars 2\ntensor 1\n");
  CHECK(e.line() == 3);
  e = error_of("");
  CHECK(e.code() == ErrorCode::SyntaxError);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "quadrk_io_test.map";
  write_text_file(path, format_map(fuzz::example_b()));
  CHECK(parse_map_text(read_text_file(path)) == fuzz::example_b());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text_file(path), Error);
}
