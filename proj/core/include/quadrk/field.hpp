#ifndef QUADRK_FIELD_HPP
#define QUADRK_FIELD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "quadrk/error.hpp"

namespace quadrk {

enum class FieldKind : std::uint8_t { Rationals, PrimeField };

/// The base field K: either Q or GF(p) with p a word-size prime.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  /// Throws FieldError unless 2 <= p < 2^31 and p is prime.
  static FieldSpec prime(std::uint64_t p);
  /// Parses "Q" or "GF(p)".
  static FieldSpec parse(std::string_view text);

  FieldKind kind() const { return kind_; }
  std::uint32_t modulus() const { return p_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_rationals() const { return kind_ == FieldKind::Rationals; }
  /// True iff 1/2 exists in K, i.e. char K != 2.
  bool has_half() const { return p_ != 2; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(FieldKind kind, std::uint32_t p) : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::uint32_t p_;  // 0 for Q
};

inline bool has_half(const FieldSpec& f) { return f.has_half(); }

/// An element of a FieldSpec in canonical form: reduced fraction for Q,
/// residue in [0, p) for GF(p).
class Scalar {
 public:
  explicit Scalar(FieldSpec field) : field_(field), value_(init(field)) {}
  Scalar(FieldSpec field, long value);
  Scalar(FieldSpec field, const mpz_class& num, const mpz_class& den);

  static Scalar zero(FieldSpec f) { return Scalar(f); }
  static Scalar one(FieldSpec f) { return Scalar(f, 1); }
  /// 1/2; throws DivisionByZero in characteristic 2.
  static Scalar half(FieldSpec f) { return Scalar(f, 1).div(Scalar(f, 2)); }

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar add(const Scalar& o) const;
  Scalar sub(const Scalar& o) const;
  Scalar mul(const Scalar& o) const;
  Scalar div(const Scalar& o) const;
  Scalar neg() const;
  Scalar inv() const;

  Scalar operator+(const Scalar& o) const { return add(o); }
  Scalar operator-(const Scalar& o) const { return sub(o); }
  Scalar operator*(const Scalar& o) const { return mul(o); }
  Scalar operator/(const Scalar& o) const { return div(o); }
  Scalar operator-() const { return neg(); }
  Scalar& operator+=(const Scalar& o) { return *this = add(o); }
  Scalar& operator-=(const Scalar& o) { return *this = sub(o); }
  Scalar& operator*=(const Scalar& o) { return *this = mul(o); }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Residue for GF(p); throws FieldMismatch over Q.
  std::uint64_t residue() const;
  /// Rational value; throws FieldMismatch over GF(p).
  const mpq_class& rational() const;

  /// "a" or "a/b" over Q (with sign), "r" with 0 <= r < p over GF(p).
  std::string to_string() const;

 private:
  using Value = std::variant<std::uint64_t, mpq_class>;
  static Value init(const FieldSpec& f);
  void check_same(const Scalar& o) const;

  FieldSpec field_;
  Value value_;
};

}  // namespace quadrk

#endif  // QUADRK_FIELD_HPP
