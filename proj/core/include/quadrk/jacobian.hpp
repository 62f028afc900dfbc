#ifndef QUADRK_JACOBIAN_HPP
#define QUADRK_JACOBIAN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadrk/degmat.hpp"

namespace quadrk {

/// Polynomial map K^n -> K^m with every component of degree <= 2.
class QuadMap {
 public:
  /// Throws DegreeTooHigh for a component of degree > 2.
  QuadMap(FieldSpec field, std::size_t nvars, std::vector<Poly> components);

  static QuadMap parse(FieldSpec field, std::size_t nvars, std::initializer_list<const char*> components);

  const FieldSpec& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return components_.size(); }
  const Poly& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Poly>& components() const { return components_; }

  /// Every component is zero or homogeneous of degree 2.
  bool is_quadratic_homogeneous() const;
  QuadMap quadratic_part() const;
  /// H - H(0).
  QuadMap without_constant() const;

  bool operator==(const QuadMap& o) const = default;
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t nvars_;
  std::vector<Poly> components_;
};

DegOneMatrix jacobian_of(const QuadMap& h);

/// Outcome of is_jacobian. On failure (i, j, k) is the offending coefficient
/// c_ijk = coefficient of x_k in entry (i, j), all 0-based.
struct JacobianCheck {
  std::optional<QuadMap> map;
  std::size_t i = 0, j = 0, k = 0;
  std::string reason;

  explicit operator bool() const { return map.has_value(); }
};

JacobianCheck is_jacobian(const DegOneMatrix& m);

/// Matrix of second partials.
PolyMatrix hessian(const Poly& h);

struct HessianIntegral {
  std::optional<Poly> h;
  std::size_t index = 0;  // offending row/column on failure
  std::string reason;

  explicit operator bool() const { return h.has_value(); }
};

/// Finds h of degree <= 3 with Hessian(h) = M for symmetric M.
HessianIntegral hessian_integrate(const DegOneMatrix& m);

/// S H(T x).
QuadMap compose_linear(const QuadMap& h, const Transform& tf);

struct Annihilator {
  std::optional<Poly> relation;  // in subset.size() variables y1..yk
  std::size_t searched_degree = 0;

  explicit operator bool() const { return relation.has_value(); }
};

/// Smallest-degree nonzero f with f(H_subset) = 0 and deg f <= max_degree.
/// Among the reduced kernel basis at that degree the sparsest vector is
/// returned, ties broken by grlex order of the support, and the coefficient
/// of its grlex-smallest monomial is normalized to 1.
Annihilator annihilator_search(const QuadMap& h, std::span<const std::size_t> subset, std::size_t max_degree);

/// f(H_subset), for checking a returned relation.
Poly evaluate_relation(const Poly& f, const QuadMap& h, std::span<const std::size_t> subset);

}  // namespace quadrk

#endif  // QUADRK_JACOBIAN_HPP
