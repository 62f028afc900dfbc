#include "quadrk/text.hpp"

#include <cctype>

namespace quadrk {

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, FieldSpec field, std::size_t nvars) : text_(text), field_(field), nvars_(nvars) {}

  Poly parse() {
    Poly result(field_, nvars_);
    skip_ws();
    if (at_end()) error(ErrorCode::SyntaxError, "empty expression");
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      Poly t = term();
      result += negative ? t.neg() : t;
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') error(ErrorCode::SyntaxError, std::string("unexpected '") + peek() + "'");
      negative = peek() == '-';
      ++pos_;
    }
    return result;
  }

  Scalar scalar_only() {
    skip_ws();
    bool negative = false;
    if (!at_end() && (peek() == '+' || peek() == '-')) {
      negative = peek() == '-';
      ++pos_;
    }
    skip_ws();
    Scalar s = number();
    skip_ws();
    if (!at_end()) error(ErrorCode::SyntaxError, "trailing characters after scalar");
    return negative ? s.neg() : s;
  }

 private:
  Poly term() {
    Poly t = Poly::constant(Scalar::one(field_), nvars_);
    for (;;) {
      skip_ws();
      t = t * factor();
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      return t;
    }
  }

  Poly factor() {
    if (at_end()) error(ErrorCode::SyntaxError, "expected a factor");
    if (std::isdigit(static_cast<unsigned char>(peek()))) return Poly::constant(number(), nvars_);
    if (peek() == 'x') {
      const std::size_t start = pos_;
      ++pos_;
      std::string digits = read_digits();
      if (digits.empty()) error(ErrorCode::SyntaxError, "expected variable index after 'x'");
      const unsigned long k = std::stoul(digits);
      if (k < 1 || k > nvars_) {
        throw ParseError(ErrorCode::UnknownVariable, start + 1, "x" + digits + " (declared vars " +
                                                                     std::to_string(nvars_) + ")");
      }
      unsigned long e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        ++pos_;
        skip_ws();
        std::string ed = read_digits();
        if (ed.empty()) error(ErrorCode::SyntaxError, "expected exponent after '^'");
        e = std::stoul(ed);
        if (e > 255) error(ErrorCode::DegreeTooHigh, "exponent too large");
      }
      Exponents ex(nvars_, 0);
      ex[k - 1] = static_cast<std::uint16_t>(e);
      Poly p(field_, nvars_);
      p.add_term(ex, Scalar::one(field_));
      return p;
    }
    error(ErrorCode::SyntaxError, std::string("unexpected '") + peek() + "'");
  }

  Scalar number() {
    const std::size_t start = pos_;
    std::string num = read_digits();
    if (num.empty()) error(ErrorCode::SyntaxError, "expected a number");
    std::string den = "1";
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      den = read_digits();
      if (den.empty()) error(ErrorCode::SyntaxError, "expected denominator after '/'");
    }
    mpz_class d(den);
    if (d == 0) throw ParseError(ErrorCode::NonCanonicalCoefficient, start + 1, "zero denominator");
    if (!field_.is_rationals() && d % field_.modulus() == 0) {
      throw ParseError(ErrorCode::NonCanonicalCoefficient, start + 1,
                       num + "/" + den + " is not an element of " + field_.to_string());
    }
    return Scalar(field_, mpz_class(num), d);
  }

  std::string read_digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
    return s;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void error(ErrorCode code, const std::string& what) const { throw ParseError(code, pos_ + 1, what); }

  std::string_view text_;
  FieldSpec field_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, FieldSpec field, std::size_t nvars) {
  return PolyParser(text, field, nvars).parse();
}

Scalar parse_scalar(std::string_view text, FieldSpec field) { return PolyParser(text, field, 0).scalar_only(); }

}  // namespace quadrk
