#include "quadrk/field.hpp"

#include <cctype>
#include <charconv>

namespace quadrk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::FieldError: return "FieldError";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularSubstitution: return "SingularSubstitution";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NonCanonicalCoefficient: return "NonCanonicalCoefficient";
    case ErrorCode::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::RankTooHigh: return "RankTooHigh";
    case ErrorCode::OutOfScope: return "OutOfScope";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotJacobianInput: return "NotJacobianInput";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::HashMismatch: return "HashMismatch";
    case ErrorCode::ClaimFailed: return "ClaimFailed";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_ui();
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31)) fail(ErrorCode::FieldError, "modulus out of range: " + std::to_string(p));
  if (!is_prime(p)) fail(ErrorCode::FieldError, "modulus is not prime: " + std::to_string(p));
  return FieldSpec(FieldKind::PrimeField, static_cast<std::uint32_t>(p));
}

FieldSpec FieldSpec::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text == "Q") return rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    std::string_view digits = trim(text.substr(3, text.size() - 4));
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) return prime(p);
  }
  fail(ErrorCode::FieldError, "expected 'Q' or 'GF(p)', got '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  return is_rationals() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

Scalar::Value Scalar::init(const FieldSpec& f) {
  if (f.is_rationals()) return mpq_class(0);
  return std::uint64_t{0};
}

Scalar::Scalar(FieldSpec field, long value) : field_(field), value_(init(field)) {
  if (field.is_rationals()) {
    std::get<mpq_class>(value_) = value;
  } else {
    std::get<std::uint64_t>(value_) = reduce(mpz_class(value), field.modulus());
  }
}

Scalar::Scalar(FieldSpec field, const mpz_class& num, const mpz_class& den) : field_(field), value_(init(field)) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
  if (field.is_rationals()) {
    mpq_class q(num, den);
    q.canonicalize();
    std::get<mpq_class>(value_) = q;
  } else {
    std::uint64_t d = reduce(den, field.modulus());
    if (d == 0) fail(ErrorCode::DivisionByZero, "denominator vanishes in " + field.to_string());
    std::uint64_t p = field.modulus();
    std::get<std::uint64_t>(value_) = reduce(num, field.modulus()) * pow_mod(d, p - 2, p) % p;
  }
}

void Scalar::check_same(const Scalar& o) const {
  if (!(field_ == o.field_)) {
    fail(ErrorCode::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
  }
}

bool Scalar::is_zero() const {
  if (field_.is_rationals()) return std::get<mpq_class>(value_) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_rationals()) return std::get<mpq_class>(value_) == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

Scalar Scalar::add(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  if (field_.is_rationals()) {
    std::get<mpq_class>(r.value_) = std::get<mpq_class>(value_) + std::get<mpq_class>(o.value_);
  } else {
    std::get<std::uint64_t>(r.value_) =
        (std::get<std::uint64_t>(value_) + std::get<std::uint64_t>(o.value_)) % field_.modulus();
  }
  return r;
}

Scalar Scalar::neg() const {
  Scalar r(field_);
  if (field_.is_rationals()) {
    std::get<mpq_class>(r.value_) = -std::get<mpq_class>(value_);
  } else {
    std::uint64_t v = std::get<std::uint64_t>(value_);
    std::get<std::uint64_t>(r.value_) = v == 0 ? 0 : field_.modulus() - v;
  }
  return r;
}

Scalar Scalar::sub(const Scalar& o) const { return add(o.neg()); }

Scalar Scalar::mul(const Scalar& o) const {
  check_same(o);
  Scalar r(field_);
  if (field_.is_rationals()) {
    std::get<mpq_class>(r.value_) = std::get<mpq_class>(value_) * std::get<mpq_class>(o.value_);
  } else {
    std::get<std::uint64_t>(r.value_) =
        std::get<std::uint64_t>(value_) * std::get<std::uint64_t>(o.value_) % field_.modulus();
  }
  return r;
}

Scalar Scalar::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  Scalar r(field_);
  if (field_.is_rationals()) {
    std::get<mpq_class>(r.value_) = 1 / std::get<mpq_class>(value_);
  } else {
    std::uint64_t p = field_.modulus();
    std::get<std::uint64_t>(r.value_) = pow_mod(std::get<std::uint64_t>(value_), p - 2, p);
  }
  return r;
}

Scalar Scalar::div(const Scalar& o) const {
  check_same(o);
  return mul(o.inv());
}

bool Scalar::operator==(const Scalar& o) const {
  if (!(field_ == o.field_)) return false;
  return value_ == o.value_;
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rationals()) fail(ErrorCode::FieldMismatch, "residue() over Q");
  return std::get<std::uint64_t>(value_);
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rationals()) fail(ErrorCode::FieldMismatch, "rational() over " + field_.to_string());
  return std::get<mpq_class>(value_);
}

std::string Scalar::to_string() const {
  if (field_.is_rationals()) return std::get<mpq_class>(value_).get_str();
  return std::to_string(std::get<std::uint64_t>(value_));
}

}  // namespace quadrk
