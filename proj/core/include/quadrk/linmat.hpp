#ifndef QUADRK_LINMAT_HPP
#define QUADRK_LINMAT_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "quadrk/field.hpp"

namespace quadrk {

using Vector = std::vector<Scalar>;

Vector zero_vector(FieldSpec f, std::size_t n);
Vector unit_vector(FieldSpec f, std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);

/// Dense m x n matrix over K.
class ConstMatrix {
 public:
  ConstMatrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static ConstMatrix identity(FieldSpec field, std::size_t n);
  static ConstMatrix from_ints(FieldSpec field, std::initializer_list<std::initializer_list<long>> rows);
  static ConstMatrix from_columns(FieldSpec field, std::size_t rows, std::span<const Vector> columns);
  /// Permutation matrix P with P e_j = e_{perm[j]}.
  static ConstMatrix permutation(FieldSpec field, std::span<const std::size_t> perm);
  /// Anti-diagonal permutation; conjugation by it swaps upper and lower triangular.
  static ConstMatrix reversal(FieldSpec field, std::size_t n);
  /// diag(blocks...) with the given square blocks.
  static ConstMatrix block_diagonal(FieldSpec field, std::span<const ConstMatrix> blocks);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector col(std::size_t j) const;

  ConstMatrix mul(const ConstMatrix& o) const;
  Vector apply(std::span<const Scalar> v) const;
  ConstMatrix add(const ConstMatrix& o) const;
  ConstMatrix sub(const ConstMatrix& o) const;
  ConstMatrix scale(const Scalar& c) const;
  ConstMatrix transpose() const;
  ConstMatrix operator*(const ConstMatrix& o) const { return mul(o); }
  ConstMatrix operator+(const ConstMatrix& o) const { return add(o); }
  ConstMatrix operator-(const ConstMatrix& o) const { return sub(o); }

  ConstMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ConstMatrix& b);
  /// Stacks matrices with equal column count on top of each other.
  static ConstMatrix vstack(FieldSpec field, std::size_t cols, std::span<const ConstMatrix> parts);

  bool is_zero() const;
  bool is_identity() const;
  bool is_strictly_lower() const;
  bool is_strictly_upper() const;

  bool operator==(const ConstMatrix& o) const;
  bool operator!=(const ConstMatrix& o) const { return !(*this == o); }

  /// Rows of comma-separated scalars, one row per line.
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

struct RrefResult {
  ConstMatrix reduced;          // reduced row echelon form R
  std::size_t rank = 0;
  ConstMatrix row_ops;          // invertible E with E*A = R
  std::vector<std::size_t> pivots;
  std::vector<Vector> kernel;   // basis of {v : A v = 0}, one vector per free column
};

/// Gauss-Jordan elimination, pivoting on the first nonzero entry.
RrefResult rref(const ConstMatrix& a);
std::size_t rank(const ConstMatrix& a);
std::vector<Vector> kernel(const ConstMatrix& a);
/// Throws SingularMatrix.
ConstMatrix invert(const ConstMatrix& a);

/// Extends the linearly independent vectors `prefix` (in K^n) to a basis by
/// appending unit vectors, in increasing index order.
std::vector<Vector> complete_basis(FieldSpec field, std::size_t n, std::span<const Vector> prefix);

/// An equivalence M -> S M T with both inverses carried along.
class Transform {
 public:
  /// Computes the inverses; throws SingularMatrix.
  Transform(ConstMatrix S, ConstMatrix T);
  /// Takes claimed inverses and checks S*S_inv = I and T*T_inv = I.
  Transform(ConstMatrix S, ConstMatrix S_inv, ConstMatrix T, ConstMatrix T_inv);

  static Transform identity(FieldSpec field, std::size_t m, std::size_t n);
  /// The similarity M -> U^{-1} M U.
  static Transform similarity(const ConstMatrix& U);

  const ConstMatrix& S() const { return S_; }
  const ConstMatrix& S_inv() const { return S_inv_; }
  const ConstMatrix& T() const { return T_; }
  const ConstMatrix& T_inv() const { return T_inv_; }

  /// (S2, T2) after (S, T): M -> S2 S M T T2.
  Transform then(const Transform& next) const;
  Transform then_rows(const ConstMatrix& R) const;
  Transform then_cols(const ConstMatrix& C) const;

 private:
  ConstMatrix S_, S_inv_, T_, T_inv_;
};

struct JordanResult {
  ConstMatrix P;                         // P^{-1} N P = jordan
  std::vector<std::size_t> block_sizes;  // descending
  ConstMatrix jordan;                    // 1s on the superdiagonal inside blocks
};

/// Jordan normal form of a nilpotent constant matrix via the kernel chain
/// ker N in ker N^2 in ...; throws NotNilpotent.
JordanResult nilpotent_jordan(const ConstMatrix& n0);

}  // namespace quadrk

#endif  // QUADRK_LINMAT_HPP
