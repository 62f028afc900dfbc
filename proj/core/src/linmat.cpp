#include "quadrk/linmat.hpp"

#include <algorithm>

namespace quadrk {

Vector zero_vector(FieldSpec f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

Vector unit_vector(FieldSpec f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

ConstMatrix::ConstMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

ConstMatrix ConstMatrix::identity(FieldSpec field, std::size_t n) {
  ConstMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

ConstMatrix ConstMatrix::from_ints(FieldSpec field, std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows.begin()->size() : 0;
  ConstMatrix m(field, nr, nc);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != nc) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    std::size_t j = 0;
    for (long v : r) m(i, j++) = Scalar(field, v);
    ++i;
  }
  return m;
}

ConstMatrix ConstMatrix::from_columns(FieldSpec field, std::size_t rows, std::span<const Vector> columns) {
  ConstMatrix m(field, rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) fail(ErrorCode::DimensionMismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

ConstMatrix ConstMatrix::permutation(FieldSpec field, std::span<const std::size_t> perm) {
  ConstMatrix m(field, perm.size(), perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(perm[j], j) = Scalar::one(field);
  if (rank(m) != perm.size()) fail(ErrorCode::SingularMatrix, "not a permutation");
  return m;
}

ConstMatrix ConstMatrix::reversal(FieldSpec field, std::size_t n) {
  ConstMatrix m(field, n, n);
  for (std::size_t j = 0; j < n; ++j) m(n - 1 - j, j) = Scalar::one(field);
  return m;
}

ConstMatrix ConstMatrix::block_diagonal(FieldSpec field, std::span<const ConstMatrix> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  ConstMatrix m(field, n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) fail(ErrorCode::DimensionMismatch, "block_diagonal needs square blocks");
    m.set_block(off, off, b);
    off += b.rows();
  }
  return m;
}

Vector ConstMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector ConstMatrix::col(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

ConstMatrix ConstMatrix::mul(const ConstMatrix& o) const {
  if (cols_ != o.rows_) fail(ErrorCode::DimensionMismatch, "matrix product");
  if (!(field_ == o.field_)) fail(ErrorCode::FieldMismatch, "matrix product");
  ConstMatrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
      }
    }
  }
  return r;
}

Vector ConstMatrix::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) fail(ErrorCode::DimensionMismatch, "matrix-vector product");
  Vector r = zero_vector(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
  }
  return r;
}

ConstMatrix ConstMatrix::add(const ConstMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix sum");
  ConstMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

ConstMatrix ConstMatrix::sub(const ConstMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix difference");
  ConstMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

ConstMatrix ConstMatrix::scale(const Scalar& c) const {
  ConstMatrix r = *this;
  for (auto& s : r.data_) s *= c;
  return r;
}

ConstMatrix ConstMatrix::transpose() const {
  ConstMatrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

ConstMatrix ConstMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorCode::DimensionMismatch, "block out of range");
  ConstMatrix r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
  }
  return r;
}

void ConstMatrix::set_block(std::size_t r0, std::size_t c0, const ConstMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) fail(ErrorCode::DimensionMismatch, "block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
}

ConstMatrix ConstMatrix::vstack(FieldSpec field, std::size_t cols, std::span<const ConstMatrix> parts) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) fail(ErrorCode::DimensionMismatch, "vstack column count");
    rows += p.rows();
  }
  ConstMatrix m(field, rows, cols);
  std::size_t off = 0;
  for (const auto& p : parts) {
    m.set_block(off, 0, p);
    off += p.rows();
  }
  return m;
}

bool ConstMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool ConstMatrix::is_identity() const { return is_square() && *this == identity(field_, rows_); }

bool ConstMatrix::is_strictly_lower() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (!(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

bool ConstMatrix::is_strictly_upper() const { return transpose().is_strictly_lower(); }

bool ConstMatrix::operator==(const ConstMatrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string ConstMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += (*this)(i, j).to_string();
    }
    out += "\n";
  }
  return out;
}

RrefResult rref(const ConstMatrix& a) {
  const FieldSpec f = a.field();
  const std::size_t m = a.rows(), n = a.cols();
  ConstMatrix r = a;
  ConstMatrix e = ConstMatrix::identity(f, m);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && r(p, col).is_zero()) ++p;
    if (p == m) continue;
    if (p != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(r(p, j), r(row, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(e(p, j), e(row, j));
    }
    const Scalar inv = r(row, col).inv();
    for (std::size_t j = 0; j < n; ++j) r(row, j) *= inv;
    for (std::size_t j = 0; j < m; ++j) e(row, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      const Scalar factor = r(i, col);
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= factor * r(row, j);
      for (std::size_t j = 0; j < m; ++j) e(i, j) -= factor * e(row, j);
    }
    pivots.push_back(col);
    ++row;
  }

  std::vector<Vector> ker;
  std::size_t pi = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (pi < pivots.size() && pivots[pi] == col) {
      ++pi;
      continue;
    }
    Vector v = unit_vector(f, n, col);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = r(i, col).neg();
    ker.push_back(std::move(v));
  }
  const std::size_t rk = pivots.size();
  return RrefResult{std::move(r), rk, std::move(e), std::move(pivots), std::move(ker)};
}

std::size_t rank(const ConstMatrix& a) { return rref(a).rank; }

std::vector<Vector> kernel(const ConstMatrix& a) { return rref(a).kernel; }

ConstMatrix invert(const ConstMatrix& a) {
  if (!a.is_square()) fail(ErrorCode::SingularMatrix, "non-square matrix has no inverse");
  RrefResult r = rref(a);
  if (r.rank != a.rows()) fail(ErrorCode::SingularMatrix, "matrix is singular");
  return r.row_ops;
}

std::vector<Vector> complete_basis(FieldSpec field, std::size_t n, std::span<const Vector> prefix) {
  std::vector<Vector> basis(prefix.begin(), prefix.end());
  if (rank(ConstMatrix::from_columns(field, n, basis)) != basis.size()) {
    fail(ErrorCode::PreconditionViolated, "complete_basis: prefix is dependent");
  }
  for (std::size_t i = 0; i < n && basis.size() < n; ++i) {
    basis.push_back(unit_vector(field, n, i));
    if (rank(ConstMatrix::from_columns(field, n, basis)) != basis.size()) basis.pop_back();
  }
  return basis;
}

Transform::Transform(ConstMatrix S, ConstMatrix T)
    : S_(std::move(S)), S_inv_(invert(S_)), T_(std::move(T)), T_inv_(invert(T_)) {}

Transform::Transform(ConstMatrix S, ConstMatrix S_inv, ConstMatrix T, ConstMatrix T_inv)
    : S_(std::move(S)), S_inv_(std::move(S_inv)), T_(std::move(T)), T_inv_(std::move(T_inv)) {
  if (!S_.is_square() || !T_.is_square()) fail(ErrorCode::DimensionMismatch, "transform matrices must be square");
  if (!(S_ * S_inv_).is_identity()) fail(ErrorCode::SingularMatrix, "S * S_inv != I");
  if (!(T_ * T_inv_).is_identity()) fail(ErrorCode::SingularMatrix, "T * T_inv != I");
}

Transform Transform::identity(FieldSpec field, std::size_t m, std::size_t n) {
  return Transform(ConstMatrix::identity(field, m), ConstMatrix::identity(field, m), ConstMatrix::identity(field, n),
                   ConstMatrix::identity(field, n));
}

Transform Transform::similarity(const ConstMatrix& U) {
  ConstMatrix U_inv = invert(U);
  return Transform(U_inv, U, U, U_inv);
}

Transform Transform::then(const Transform& next) const {
  return Transform(next.S_ * S_, S_inv_ * next.S_inv_, T_ * next.T_, next.T_inv_ * T_inv_);
}

Transform Transform::then_rows(const ConstMatrix& R) const {
  ConstMatrix R_inv = invert(R);
  return Transform(R * S_, S_inv_ * R_inv, T_, T_inv_);
}

Transform Transform::then_cols(const ConstMatrix& C) const {
  ConstMatrix C_inv = invert(C);
  return Transform(S_, S_inv_, T_ * C, C_inv * T_inv_);
}

JordanResult nilpotent_jordan(const ConstMatrix& n0) {
  if (!n0.is_square()) fail(ErrorCode::DimensionMismatch, "nilpotent_jordan needs a square matrix");
  const FieldSpec f = n0.field();
  const std::size_t n = n0.rows();

  // powers[k] = N^k, kernels[k] = basis of ker N^k
  std::vector<ConstMatrix> powers{ConstMatrix::identity(f, n)};
  std::vector<std::vector<Vector>> kernels{{}};
  while (kernels.back().size() < n) {
    if (powers.size() > n) fail(ErrorCode::NotNilpotent, "constant matrix is not nilpotent");
    powers.push_back(powers.back() * n0);
    kernels.push_back(kernel(powers.back()));
  }
  const std::size_t index = powers.size() - 1;

  struct Head {
    Vector v;
    std::size_t level;
  };
  std::vector<Head> heads;
  for (std::size_t level = index; level >= 1; --level) {
    std::vector<Vector> span = kernels[level - 1];
    for (const auto& h : heads) span.push_back(powers[h.level - level].apply(h.v));
    std::size_t current = span.empty() ? 0 : rank(ConstMatrix::from_columns(f, n, span));
    for (const auto& candidate : kernels[level]) {
      span.push_back(candidate);
      std::size_t r = rank(ConstMatrix::from_columns(f, n, span));
      if (r > current) {
        current = r;
        heads.push_back(Head{candidate, level});
      } else {
        span.pop_back();
      }
    }
  }

  std::vector<Vector> columns;
  std::vector<std::size_t> sizes;
  for (const auto& h : heads) {
    for (std::size_t k = h.level; k >= 1; --k) columns.push_back(powers[k - 1].apply(h.v));
    sizes.push_back(h.level);
  }
  ConstMatrix P = ConstMatrix::from_columns(f, n, columns);
  ConstMatrix J = invert(P) * n0 * P;

  ConstMatrix expected(f, n, n);
  std::size_t off = 0;
  for (std::size_t s : sizes) {
    for (std::size_t k = 0; k + 1 < s; ++k) expected(off + k, off + k + 1) = Scalar::one(f);
    off += s;
  }
  if (J != expected) throw InternalContradiction("kernel-chain basis does not produce the Jordan form");
  return JordanResult{std::move(P), std::move(sizes), std::move(J)};
}

}  // namespace quadrk
