#ifndef QUADRK_DEGMAT_HPP
#define QUADRK_DEGMAT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quadrk/linmat.hpp"
#include "quadrk/poly.hpp"

namespace quadrk {

/// Rectangular matrix of polynomials of any degree.
class PolyMatrix {
 public:
  PolyMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::size_t nvars);

  static PolyMatrix identity(FieldSpec field, std::size_t n, std::size_t nvars);
  static PolyMatrix from_const(const ConstMatrix& c, std::size_t nvars);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }

  const Poly& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Poly& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix scale(const Scalar& c) const;
  PolyMatrix transpose() const;
  PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  /// Rows of comma-separated polynomials.
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_, cols_, nvars_;
  std::vector<Poly> entries_;
};

/// Exact product; throws DimensionMismatch.
PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b);

/// M = C0 + sum_i x_i C_i with constant m x n coefficient matrices.
class DegOneMatrix {
 public:
  DegOneMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::size_t nvars);
  DegOneMatrix(ConstMatrix c0, std::vector<ConstMatrix> coefficients);

  /// Throws DegreeTooHigh(i, j) if an entry has degree > 1.
  static DegOneMatrix from_poly_matrix(const PolyMatrix& p);
  /// Convenience for literals: entries are parsed polynomial expressions.
  static DegOneMatrix parse(FieldSpec field, std::size_t nvars,
                            std::initializer_list<std::initializer_list<const char*>> rows);

  const FieldSpec& field() const { return c0_.field(); }
  std::size_t rows() const { return c0_.rows(); }
  std::size_t cols() const { return c0_.cols(); }
  std::size_t nvars() const { return coeffs_.size(); }
  bool is_square() const { return rows() == cols(); }

  /// M(0).
  const ConstMatrix& constant() const { return c0_; }
  /// Coefficient matrix of x_i (0-based).
  const ConstMatrix& coefficient(std::size_t i) const;
  /// All coefficient matrices, C0 first.
  std::vector<ConstMatrix> all_coefficients() const;

  Poly entry(std::size_t i, std::size_t j) const;
  PolyMatrix to_poly_matrix() const;

  DegOneMatrix transpose() const;
  DegOneMatrix neg() const;
  DegOneMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// Left and right multiplication by constant matrices: S M T.
  DegOneMatrix sandwich(const ConstMatrix& S, const ConstMatrix& T) const;

  bool is_zero() const;
  bool is_constant() const;
  bool is_strictly_lower() const;
  bool is_strictly_upper() const;
  bool is_upper() const;
  bool operator==(const DegOneMatrix& o) const;
  bool operator!=(const DegOneMatrix& o) const { return !(*this == o); }

  std::string to_string() const { return to_poly_matrix().to_string(); }

 private:
  ConstMatrix c0_;
  std::vector<ConstMatrix> coeffs_;
};

/// A fresh n-tuple of indeterminates. Tuple `index` occupies variables
/// index*n .. index*n + n - 1 of a ring with total_tuples*n variables; index 0
/// is x itself.
struct GenericTuple {
  std::size_t base_nvars;
  std::size_t index;

  std::vector<Poly> variables(FieldSpec field, std::size_t total_tuples) const;
};

/// M(v) = C0 + sum v_i C_i.
PolyMatrix evaluate(const DegOneMatrix& m, std::span<const Poly> v);
ConstMatrix evaluate(const DegOneMatrix& m, std::span<const Scalar> v);
PolyMatrix evaluate(const DegOneMatrix& m, const GenericTuple& t, std::size_t total_tuples);

/// M(y1) M(y2) ... M(yk) over k disjoint generic tuples (tuples 1..k in a
/// ring with (k+1)*n variables, tuple 0 unused).
PolyMatrix generic_product(const DegOneMatrix& m, std::size_t k);

/// Rank over K(x) by fraction-free elimination only.
std::size_t rank_bareiss(const PolyMatrix& m);
/// Rank over K(x) from cofactor-expanded minors, searching sizes up to max_r.
/// Returns max_r if a nonzero max_r x max_r minor exists.
std::size_t rank_by_minors(const PolyMatrix& m, std::size_t max_r);
/// Bareiss rank; results <= 3 are cross-checked against minor enumeration.
std::size_t rank_symbolic(const PolyMatrix& m);
std::size_t rank_symbolic(const DegOneMatrix& m);

Poly determinant(const PolyMatrix& m);
Poly determinant_cofactor(const PolyMatrix& m);

/// s_r = sum of principal r x r minors, r = 1..m (index r-1).
std::vector<Poly> principal_minor_sums(const PolyMatrix& m);

bool is_nilpotent_by_minors(const DegOneMatrix& m);
bool is_nilpotent_by_power(const DegOneMatrix& m);
/// Minor criterion, cross-checked against M^m == 0.
bool is_nilpotent(const DegOneMatrix& m);

struct StrongNilpotence {
  std::optional<ConstMatrix> U;      // U^{-1} M U strictly lower triangular
  std::optional<ConstMatrix> U_inv;
  /// On failure: size of the leading block that has no constant kernel vector.
  std::size_t stuck_block_size = 0;

  bool triangularizable() const { return U.has_value(); }
};

/// Constant-kernel recursion: find c != 0 with C_k c = 0 for every
/// coefficient matrix, move it to the last basis vector, recurse on the
/// leading block. Decides strong nilpotence over an infinite extension of K.
StrongNilpotence strongly_nilpotent_triangularize(const DegOneMatrix& m);

/// U^{-1} M U.
DegOneMatrix conjugate(const DegOneMatrix& m, const ConstMatrix& U);
DegOneMatrix apply_transform(const DegOneMatrix& m, const Transform& tf);

/// M(A x + c); the linear part mixes coefficient matrices.
DegOneMatrix substitute_affine(const DegOneMatrix& m, const ConstMatrix& A, std::span<const Scalar> c);
/// M(x + c).
DegOneMatrix shift_vars(const DegOneMatrix& m, std::span<const Scalar> c);
/// Swaps the roles of C0 and C_j.
DegOneMatrix coefficient_swap(const DegOneMatrix& m, std::size_t j);

}  // namespace quadrk

#endif  // QUADRK_DEGMAT_HPP
