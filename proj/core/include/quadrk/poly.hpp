#ifndef QUADRK_POLY_HPP
#define QUADRK_POLY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "quadrk/field.hpp"

namespace quadrk {

class ConstMatrix;

using Exponents = std::vector<std::uint16_t>;

std::size_t total_degree(const Exponents& e);

/// Graded-lexicographic order, largest first: higher total degree wins,
/// ties go to the larger exponent of x1, then x2, ...
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial over K in x1..x_nvars. Variables are
/// addressed by 0-based index in the API and printed 1-based.
class Poly {
 public:
  using TermMap = std::map<Exponents, Scalar, GrlexGreater>;

  Poly(FieldSpec field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static Poly constant(const Scalar& c, std::size_t nvars);
  static Poly variable(FieldSpec field, std::size_t nvars, std::size_t i);
  /// Linear form sum_i coeffs[i]*x_i plus constant.
  static Poly affine(std::span<const Scalar> coeffs, const Scalar& constant);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Degree in variable i; -1 for the zero polynomial.
  int degree_in(std::size_t i) const;
  bool is_homogeneous() const;

  Scalar coefficient(const Exponents& e) const;
  Scalar constant_term() const;
  /// Coefficient of the monomial x_i.
  Scalar linear_coefficient(std::size_t i) const;
  /// Terms of total degree exactly d.
  Poly homogeneous_part(int d) const;
  Poly leading_homogeneous_part() const { return homogeneous_part(degree()); }

  /// Adds c*x^e in place.
  void add_term(const Exponents& e, const Scalar& c);

  Poly add(const Poly& o) const;
  Poly sub(const Poly& o) const;
  Poly mul(const Poly& o) const;
  Poly scale(const Scalar& c) const;
  Poly neg() const;
  Poly pow(unsigned k) const;

  Poly operator+(const Poly& o) const { return add(o); }
  Poly operator-(const Poly& o) const { return sub(o); }
  Poly operator*(const Poly& o) const { return mul(o); }
  Poly operator-() const { return neg(); }
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Formal partial derivative; exponents are multiplied as field scalars.
  Poly derivative(std::size_t i) const;

  /// p(A x + c). A must be square nvars x nvars and invertible.
  Poly substitute_affine(const ConstMatrix& A, std::span<const Scalar> c) const;
  /// p(images[0], ..., images[nvars-1]); images may live in any variable count.
  Poly compose(std::span<const Poly> images) const;
  /// Re-embeds into new_nvars variables, mapping x_i to x_{offset+i}.
  Poly embed(std::size_t new_nvars, std::size_t offset = 0) const;
  /// Exact quotient p / q; throws PreconditionViolated if q does not divide p.
  Poly divexact(const Poly& q) const;

  /// Canonical text, e.g. "x1*x2 - 1/2*x3".
  std::string to_string() const;

 private:
  void check_compatible(const Poly& o) const;

  FieldSpec field_;
  std::size_t nvars_;
  TermMap terms_;
};

}  // namespace quadrk

#endif  // QUADRK_POLY_HPP
