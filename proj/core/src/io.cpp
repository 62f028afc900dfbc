#include "quadrk/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "quadrk/text.hpp"

namespace quadrk {

SourceError::SourceError(ErrorCode code, std::size_t line, std::size_t column, const std::string& what)
    : Error(code, "line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::string_view text;
};

bool blank(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && blank(s.back())) s.remove_suffix(1);
  return s;
}

// 1-based column of `part`, which points into `line`.
std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    const std::string_view t = trim(line);
    if (!t.empty() && t.front() != '#') out.push_back({number, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

[[noreturn]] void syntax(const Line& l, std::size_t column, const std::string& what) {
  throw SourceError(ErrorCode::SyntaxError, l.number, column, what);
}

std::size_t parse_count(const Line& l, std::string_view token) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    syntax(l, column_of(l.text, token), "expected a nonnegative integer, got '" + std::string(token) + "'");
  }
  return v;
}

// keyword followed by whitespace-separated arguments
std::vector<std::string_view> header(const Line& l, std::string_view keyword, std::size_t nargs) {
  std::vector<std::string_view> words;
  std::string_view rest = l.text;
  while (true) {
    while (!rest.empty() && blank(rest.front())) rest.remove_prefix(1);
    if (rest.empty()) break;
    std::size_t k = 0;
    while (k < rest.size() && !blank(rest[k])) ++k;
    words.push_back(rest.substr(0, k));
    rest.remove_prefix(k);
  }
  if (words.empty() || words[0] != keyword) {
    syntax(l, words.empty() ? 1 : column_of(l.text, words[0]), "expected '" + std::string(keyword) + "'");
  }
  if (words.size() != nargs + 1) {
    syntax(l, column_of(l.text, words[0]),
           "'" + std::string(keyword) + "' takes " + std::to_string(nargs) + " argument" + (nargs == 1 ? "" : "s"));
  }
  words.erase(words.begin());
  return words;
}

Poly parse_at(const Line& l, std::string_view expr, FieldSpec f, std::size_t nvars) {
  const std::string_view t = trim(expr);
  if (t.empty()) syntax(l, column_of(l.text, expr), "empty polynomial");
  try {
    return parse_poly(t, f, nvars);
  } catch (const ParseError& e) {
    // drop the parser's own "column N: " prefix
    const std::string& what = e.detail();
    const std::size_t colon = what.find(": ");
    throw SourceError(e.code(), l.number, column_of(l.text, t) + e.column() - 1,
                      colon == std::string::npos ? what : what.substr(colon + 2));
  } catch (const Error& e) {
    throw SourceError(e.code(), l.number, column_of(l.text, t), e.detail());
  }
}

struct Header {
  FieldSpec field;
  std::size_t nvars;
  std::string kind;  // "matrix" or "map"
  std::vector<std::size_t> dims;
  std::size_t body_start;
};

Header read_header(const std::vector<Line>& lines) {
  if (lines.size() < 3) {
    throw SourceError(ErrorCode::SyntaxError, lines.empty() ? 1 : lines.back().number, 0,
                      "expected 'field', 'vars' and 'matrix'/'map' header lines");
  }
  const auto fw = header(lines[0], "field", 1);
  std::optional<FieldSpec> field;
  try {
    field = FieldSpec::parse(fw[0]);
  } catch (const Error& e) {
    throw SourceError(e.code(), lines[0].number, column_of(lines[0].text, fw[0]), e.detail());
  }
  const std::size_t nvars = parse_count(lines[1], header(lines[1], "vars", 1)[0]);
  const std::string_view third = trim(lines[2].text);
  Header h{*field, nvars, {}, {}, 3};
  if (third.starts_with("matrix")) {
    const auto w = header(lines[2], "matrix", 2);
    h.kind = "matrix";
    h.dims = {parse_count(lines[2], w[0]), parse_count(lines[2], w[1])};
  } else if (third.starts_with("map")) {
    h.kind = "map";
    h.dims = {parse_count(lines[2], header(lines[2], "map", 1)[0])};
  } else {
    syntax(lines[2], column_of(lines[2].text, third), "expected 'matrix m n' or 'map m'");
  }
  return h;
}

DegOneMatrix matrix_body(const std::vector<Line>& lines, const Header& h) {
  const std::size_t m = h.dims[0], n = h.dims[1];
  if (m == 0 || n == 0) syntax(lines[2], 1, "matrix dimensions must be positive");
  const std::size_t have = lines.size() - h.body_start;
  if (have != m) {
    const Line& at = have ? lines.back() : lines[2];
    syntax(at, 0, "expected " + std::to_string(m) + " matrix rows, found " + std::to_string(have));
  }
  PolyMatrix p(h.field, m, n, h.nvars);
  for (std::size_t i = 0; i < m; ++i) {
    const Line& l = lines[h.body_start + i];
    std::string_view rest = l.text;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t comma = rest.find(',');
      if ((comma == std::string_view::npos) != (j + 1 == n)) {
        syntax(l, comma == std::string_view::npos ? l.text.size() + 1 : column_of(l.text, rest.substr(comma)),
               "expected " + std::to_string(n) + " comma-separated entries");
      }
      const std::string_view expr = rest.substr(0, comma);
      const Poly e = parse_at(l, expr, h.field, h.nvars);
      if (e.degree() > 1) {
        throw SourceError(ErrorCode::DegreeTooHigh, l.number, column_of(l.text, trim(expr)),
                          "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") has degree " +
                              std::to_string(e.degree()));
      }
      p(i, j) = e;
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
  }
  return DegOneMatrix::from_poly_matrix(p);
}

QuadMap map_body(const std::vector<Line>& lines, const Header& h) {
  const std::size_t m = h.dims[0];
  std::vector<std::optional<Poly>> comps(m);
  for (std::size_t k = h.body_start; k < lines.size(); ++k) {
    const Line& l = lines[k];
    const std::string_view t = trim(l.text);
    const std::size_t eq = t.find('=');
    const std::string_view lhs = trim(t.substr(0, eq));
    if (eq == std::string_view::npos || lhs.size() < 2 || lhs[0] != 'H') {
      syntax(l, column_of(l.text, t), "expected 'H<i> = expression'");
    }
    const std::size_t i = parse_count(l, lhs.substr(1));
    if (i == 0 || i > m) syntax(l, column_of(l.text, lhs), "component index out of range 1.." + std::to_string(m));
    if (comps[i - 1]) syntax(l, column_of(l.text, lhs), "component H" + std::to_string(i) + " given twice");
    const std::string_view rhs = t.substr(eq + 1);
    const Poly e = parse_at(l, rhs, h.field, h.nvars);
    if (e.degree() > 2) {
      throw SourceError(ErrorCode::DegreeTooHigh, l.number, column_of(l.text, trim(rhs)),
                        "component H" + std::to_string(i) + " has degree " + std::to_string(e.degree()));
    }
    comps[i - 1] = e;
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (!comps[i]) syntax(lines.back(), 0, "component H" + std::to_string(i + 1) + " is missing");
    out.push_back(*comps[i]);
  }
  return QuadMap(h.field, h.nvars, std::move(out));
}

}  // namespace

DegOneMatrix parse_matrix_text(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = read_header(lines);
  if (h.kind != "matrix") syntax(lines[2], 1, "expected a matrix file");
  return matrix_body(lines, h);
}

QuadMap parse_map_text(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = read_header(lines);
  if (h.kind != "map") syntax(lines[2], 1, "expected a map file");
  return map_body(lines, h);
}

InputObject parse_input_text(std::string_view text) {
  const auto lines = content_lines(text);
  const Header h = read_header(lines);
  if (h.kind == "matrix") return matrix_body(lines, h);
  return map_body(lines, h);
}

std::string format_matrix(const DegOneMatrix& m) {
  std::ostringstream out;
  out << "field " << m.field().to_string() << "\nvars " << m.nvars() << "\nmatrix " << m.rows() << ' ' << m.cols()
      << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m.entry(i, j).to_string();
    out << '\n';
  }
  return out.str();
}

std::string format_map(const QuadMap& h) {
  std::ostringstream out;
  out << "field " << h.field().to_string() << "\nvars " << h.nvars() << "\nmap " << h.size() << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) out << 'H' << i + 1 << " = " << h[i].to_string() << '\n';
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

}  // namespace quadrk
