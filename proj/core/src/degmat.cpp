#include "quadrk/degmat.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "quadrk/text.hpp"

namespace quadrk {

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::size_t nvars)
    : field_(field), rows_(rows), cols_(cols), nvars_(nvars), entries_(rows * cols, Poly(field, nvars)) {}

PolyMatrix PolyMatrix::identity(FieldSpec field, std::size_t n, std::size_t nvars) {
  PolyMatrix m(field, n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(Scalar::one(field), nvars);
  return m;
}

PolyMatrix PolyMatrix::from_const(const ConstMatrix& c, std::size_t nvars) {
  PolyMatrix m(c.field(), c.rows(), c.cols(), nvars);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) m(i, j) = Poly::constant(c(i, j), nvars);
  }
  return m;
}

PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "polynomial matrix product");
  if (a.nvars() != b.nvars()) fail(ErrorCode::ArityMismatch, "polynomial matrix product");
  PolyMatrix r(a.field(), a.rows(), b.cols(), a.nvars());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const { return matmul(*this, o); }

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "polynomial matrix sum");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] += o.entries_[k];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "polynomial matrix difference");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] -= o.entries_[k];
  return r;
}

PolyMatrix PolyMatrix::scale(const Scalar& c) const {
  PolyMatrix r = *this;
  for (auto& p : r.entries_) p = p.scale(c);
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(field_, cols_, rows_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  PolyMatrix r(field_, rows.size(), cols.size(), nvars_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
  }
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && nvars_ == o.nvars_ && entries_ == o.entries_;
}

std::string PolyMatrix::to_string() const {
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

// -------------------------------------------------------------- DegOneMatrix

DegOneMatrix::DegOneMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::size_t nvars)
    : c0_(field, rows, cols), coeffs_(nvars, ConstMatrix(field, rows, cols)) {}

DegOneMatrix::DegOneMatrix(ConstMatrix c0, std::vector<ConstMatrix> coefficients)
    : c0_(std::move(c0)), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_) {
    if (c.rows() != c0_.rows() || c.cols() != c0_.cols()) {
      fail(ErrorCode::DimensionMismatch, "coefficient matrices differ in shape");
    }
    if (!(c.field() == c0_.field())) fail(ErrorCode::FieldMismatch, "coefficient matrices differ in field");
  }
}

DegOneMatrix DegOneMatrix::from_poly_matrix(const PolyMatrix& p) {
  DegOneMatrix m(p.field(), p.rows(), p.cols(), p.nvars());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      const Poly& e = p(i, j);
      if (e.degree() > 1) {
        fail(ErrorCode::DegreeTooHigh,
             "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") has degree " +
                 std::to_string(e.degree()));
      }
      m.c0_(i, j) = e.constant_term();
      for (std::size_t k = 0; k < p.nvars(); ++k) m.coeffs_[k](i, j) = e.linear_coefficient(k);
    }
  }
  return m;
}

DegOneMatrix DegOneMatrix::parse(FieldSpec field, std::size_t nvars,
                                 std::initializer_list<std::initializer_list<const char*>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows.begin()->size() : 0;
  PolyMatrix p(field, nr, nc, nvars);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != nc) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    std::size_t j = 0;
    for (const char* s : r) p(i, j++) = parse_poly(s, field, nvars);
    ++i;
  }
  return from_poly_matrix(p);
}

const ConstMatrix& DegOneMatrix::coefficient(std::size_t i) const {
  if (i >= coeffs_.size()) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i + 1));
  return coeffs_[i];
}

std::vector<ConstMatrix> DegOneMatrix::all_coefficients() const {
  std::vector<ConstMatrix> all{c0_};
  all.insert(all.end(), coeffs_.begin(), coeffs_.end());
  return all;
}

Poly DegOneMatrix::entry(std::size_t i, std::size_t j) const {
  std::vector<Scalar> lin;
  lin.reserve(coeffs_.size());
  for (const auto& c : coeffs_) lin.push_back(c(i, j));
  return Poly::affine(lin, c0_(i, j));
}

PolyMatrix DegOneMatrix::to_poly_matrix() const {
  PolyMatrix p(field(), rows(), cols(), nvars());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) p(i, j) = entry(i, j);
  }
  return p;
}

DegOneMatrix DegOneMatrix::transpose() const {
  std::vector<ConstMatrix> cs;
  for (const auto& c : coeffs_) cs.push_back(c.transpose());
  return DegOneMatrix(c0_.transpose(), std::move(cs));
}

DegOneMatrix DegOneMatrix::neg() const {
  const Scalar minus_one(field(), -1);
  std::vector<ConstMatrix> cs;
  for (const auto& c : coeffs_) cs.push_back(c.scale(minus_one));
  return DegOneMatrix(c0_.scale(minus_one), std::move(cs));
}

DegOneMatrix DegOneMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  std::vector<ConstMatrix> cs;
  for (const auto& c : coeffs_) cs.push_back(c.block(r0, c0, nr, nc));
  return DegOneMatrix(c0_.block(r0, c0, nr, nc), std::move(cs));
}

DegOneMatrix DegOneMatrix::sandwich(const ConstMatrix& S, const ConstMatrix& T) const {
  if (S.cols() != rows() || T.rows() != cols()) fail(ErrorCode::DimensionMismatch, "S M T dimensions");
  std::vector<ConstMatrix> cs;
  for (const auto& c : coeffs_) cs.push_back(S * c * T);
  return DegOneMatrix(S * c0_ * T, std::move(cs));
}

bool DegOneMatrix::is_zero() const {
  return c0_.is_zero() && is_constant();
}

bool DegOneMatrix::is_constant() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ConstMatrix& c) { return c.is_zero(); });
}

bool DegOneMatrix::is_strictly_lower() const {
  if (!is_square()) return false;
  for (const auto& c : all_coefficients()) {
    if (!c.is_strictly_lower()) return false;
  }
  return true;
}

bool DegOneMatrix::is_strictly_upper() const { return transpose().is_strictly_lower(); }

bool DegOneMatrix::is_upper() const {
  for (const auto& c : all_coefficients()) {
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < i && j < c.cols(); ++j) {
        if (!c(i, j).is_zero()) return false;
      }
    }
  }
  return true;
}

bool DegOneMatrix::operator==(const DegOneMatrix& o) const { return c0_ == o.c0_ && coeffs_ == o.coeffs_; }

// ---------------------------------------------------------------- evaluation

std::vector<Poly> GenericTuple::variables(FieldSpec field, std::size_t total_tuples) const {
  if (index >= total_tuples) fail(ErrorCode::IndexOutOfRange, "generic tuple index");
  std::vector<Poly> v;
  v.reserve(base_nvars);
  for (std::size_t i = 0; i < base_nvars; ++i) {
    v.push_back(Poly::variable(field, base_nvars * total_tuples, index * base_nvars + i));
  }
  return v;
}

PolyMatrix evaluate(const DegOneMatrix& m, std::span<const Poly> v) {
  if (v.size() != m.nvars()) fail(ErrorCode::ArityMismatch, "evaluation point has wrong length");
  const std::size_t target = v.empty() ? 0 : v[0].nvars();
  PolyMatrix r = PolyMatrix::from_const(m.constant(), target);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const ConstMatrix& c = m.coefficient(k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (!c(i, j).is_zero()) r(i, j) += v[k].scale(c(i, j));
      }
    }
  }
  return r;
}

ConstMatrix evaluate(const DegOneMatrix& m, std::span<const Scalar> v) {
  if (v.size() != m.nvars()) fail(ErrorCode::ArityMismatch, "evaluation point has wrong length");
  ConstMatrix r = m.constant();
  for (std::size_t k = 0; k < v.size(); ++k) r = r + m.coefficient(k).scale(v[k]);
  return r;
}

PolyMatrix evaluate(const DegOneMatrix& m, const GenericTuple& t, std::size_t total_tuples) {
  if (t.base_nvars != m.nvars()) fail(ErrorCode::ArityMismatch, "generic tuple arity");
  auto vars = t.variables(m.field(), total_tuples);
  if (vars.empty()) return PolyMatrix::from_const(m.constant(), 0);
  return evaluate(m, vars);
}

PolyMatrix generic_product(const DegOneMatrix& m, std::size_t k) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "generic product needs a square matrix");
  const std::size_t total = k + 1;
  PolyMatrix r = PolyMatrix::identity(m.field(), m.rows(), m.nvars() * total);
  for (std::size_t t = 1; t <= k; ++t) r = r * evaluate(m, GenericTuple{m.nvars(), t}, total);
  return r;
}

// ----------------------------------------------------------- rank and minors

std::size_t rank_bareiss(const PolyMatrix& input) {
  PolyMatrix a = input;
  const std::size_t m = a.rows(), n = a.cols();
  Poly prev = Poly::constant(Scalar::one(a.field()), a.nvars());
  std::size_t r = 0;
  for (std::size_t k = 0; k < std::min(m, n); ++k) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = k; i < m && pi == m; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        if (!a(i, j).is_zero()) {
          pi = i;
          pj = j;
          break;
        }
      }
    }
    if (pi == m) break;
    if (pi != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pi, j), a(k, j));
    }
    if (pj != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, pj), a(i, k));
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)).divexact(prev);
      }
      a(i, k) = Poly(a.field(), a.nvars());
    }
    prev = a(k, k);
    ++r;
  }
  return r;
}

Poly determinant_cofactor(const PolyMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Poly::constant(Scalar::one(m.field()), m.nvars());
  if (n == 1) return m(0, 0);
  Poly det(m.field(), m.nvars());
  std::vector<std::size_t> rows(n - 1), cols;
  std::iota(rows.begin(), rows.end(), 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    cols.clear();
    for (std::size_t c = 0; c < n; ++c) {
      if (c != j) cols.push_back(c);
    }
    Poly term = m(0, j) * determinant_cofactor(m.submatrix(rows, cols));
    if (j % 2) {
      det -= term;
    } else {
      det += term;
    }
  }
  return det;
}

Poly determinant(const PolyMatrix& input) {
  if (input.rows() != input.cols()) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  PolyMatrix a = input;
  const std::size_t n = a.rows();
  const FieldSpec f = a.field();
  if (n == 0) return Poly::constant(Scalar::one(f), a.nvars());
  Poly prev = Poly::constant(Scalar::one(f), a.nvars());
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return Poly(f, a.nvars());
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)).divexact(prev);
      }
      a(i, k) = Poly(f, a.nvars());
    }
    prev = a(k, k);
  }
  return negate ? a(n - 1, n - 1).neg() : a(n - 1, n - 1);
}

namespace {

// Calls visit(subset) for every r-subset of {0..n-1} in lexicographic order
// until visit returns true.
bool any_subset(std::size_t n, std::size_t r, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (r > n) return false;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (visit(idx)) return true;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t k = i; k < r; ++k) idx[k] = idx[k - 1] + 1;
  }
}

bool has_nonzero_minor(const PolyMatrix& m, std::size_t r) {
  if (r == 0) return true;
  return any_subset(m.rows(), r, [&](const std::vector<std::size_t>& rows) {
    return any_subset(m.cols(), r, [&](const std::vector<std::size_t>& cols) {
      return !determinant_cofactor(m.submatrix(rows, cols)).is_zero();
    });
  });
}

}  // namespace

std::size_t rank_by_minors(const PolyMatrix& m, std::size_t max_r) {
  max_r = std::min({max_r, m.rows(), m.cols()});
  for (std::size_t r = 1; r <= max_r; ++r) {
    if (!has_nonzero_minor(m, r)) return r - 1;
  }
  return max_r;
}

std::size_t rank_symbolic(const PolyMatrix& m) {
  const std::size_t r = rank_bareiss(m);
  if (r <= 3) {
    const std::size_t cap = std::min({r + 1, m.rows(), m.cols()});
    if (rank_by_minors(m, cap) != r) {
      throw InternalContradiction("fraction-free rank " + std::to_string(r) + " disagrees with minor enumeration");
    }
  }
  return r;
}

std::size_t rank_symbolic(const DegOneMatrix& m) { return rank_symbolic(m.to_poly_matrix()); }

std::vector<Poly> principal_minor_sums(const PolyMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "principal minors need a square matrix");
  const std::size_t n = m.rows();
  if (n > 16) fail(ErrorCode::PreconditionViolated, "principal minor enumeration limited to 16x16");
  std::vector<Poly> sums(n, Poly(m.field(), m.nvars()));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    sums[idx.size() - 1] += determinant(m.submatrix(idx, idx));
  }
  return sums;
}

bool is_nilpotent_by_minors(const DegOneMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "nilpotency needs a square matrix");
  auto sums = principal_minor_sums(m.to_poly_matrix());
  return std::all_of(sums.begin(), sums.end(), [](const Poly& s) { return s.is_zero(); });
}

bool is_nilpotent_by_power(const DegOneMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "nilpotency needs a square matrix");
  const PolyMatrix p = m.to_poly_matrix();
  PolyMatrix power = PolyMatrix::identity(m.field(), m.rows(), m.nvars());
  for (std::size_t k = 0; k < m.rows(); ++k) power = power * p;
  return power.is_zero();
}

bool is_nilpotent(const DegOneMatrix& m) {
  const bool by_minors = is_nilpotent_by_minors(m);
  if (by_minors != is_nilpotent_by_power(m)) {
    throw InternalContradiction("principal-minor and power criteria for nilpotency disagree");
  }
  return by_minors;
}

// --------------------------------------------------------- transformations

DegOneMatrix conjugate(const DegOneMatrix& m, const ConstMatrix& U) { return m.sandwich(invert(U), U); }

DegOneMatrix apply_transform(const DegOneMatrix& m, const Transform& tf) { return m.sandwich(tf.S(), tf.T()); }

DegOneMatrix substitute_affine(const DegOneMatrix& m, const ConstMatrix& A, std::span<const Scalar> c) {
  const std::size_t n = m.nvars();
  if (A.rows() != n || A.cols() != n || c.size() != n) fail(ErrorCode::ArityMismatch, "substitution dimensions");
  if (rank(A) != n) fail(ErrorCode::SingularSubstitution, "substitution matrix is singular");
  ConstMatrix c0 = m.constant();
  std::vector<ConstMatrix> cs(n, ConstMatrix(m.field(), m.rows(), m.cols()));
  for (std::size_t i = 0; i < n; ++i) {
    const ConstMatrix& ci = m.coefficient(i);
    if (!c[i].is_zero()) c0 = c0 + ci.scale(c[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!A(i, k).is_zero()) cs[k] = cs[k] + ci.scale(A(i, k));
    }
  }
  return DegOneMatrix(std::move(c0), std::move(cs));
}

DegOneMatrix shift_vars(const DegOneMatrix& m, std::span<const Scalar> c) {
  if (c.size() != m.nvars()) fail(ErrorCode::ArityMismatch, "shift vector has wrong length");
  return substitute_affine(m, ConstMatrix::identity(m.field(), m.nvars()), c);
}

DegOneMatrix coefficient_swap(const DegOneMatrix& m, std::size_t j) {
  if (j >= m.nvars()) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(j + 1));
  std::vector<ConstMatrix> cs;
  for (std::size_t i = 0; i < m.nvars(); ++i) cs.push_back(i == j ? m.constant() : m.coefficient(i));
  return DegOneMatrix(m.coefficient(j), std::move(cs));
}

StrongNilpotence strongly_nilpotent_triangularize(const DegOneMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "strong nilpotence needs a square matrix");
  const FieldSpec f = m.field();
  const std::size_t n = m.rows();
  ConstMatrix U = ConstMatrix::identity(f, n);
  DegOneMatrix cur = m;
  for (std::size_t size = n; size > 0; --size) {
    const DegOneMatrix lead = cur.block(0, 0, size, size);
    const auto parts = lead.all_coefficients();
    const auto ker = kernel(ConstMatrix::vstack(f, size, parts));
    if (ker.empty()) return StrongNilpotence{std::nullopt, std::nullopt, size};

    const Vector& c = ker.front();
    std::size_t p = size;
    while (p > 0 && c[p - 1].is_zero()) --p;
    std::vector<Vector> columns;
    for (std::size_t i = 0; i < size; ++i) {
      if (i + 1 != p) columns.push_back(unit_vector(f, size, i));
    }
    columns.push_back(c);
    ConstMatrix step = ConstMatrix::identity(f, n);
    step.set_block(0, 0, ConstMatrix::from_columns(f, size, columns));
    U = U * step;
    cur = conjugate(cur, step);
  }
  ConstMatrix U_inv = invert(U);
  if (!m.sandwich(U_inv, U).is_strictly_lower()) {
    throw InternalContradiction("constant-kernel recursion produced a non-triangular conjugate");
  }
  return StrongNilpotence{std::move(U), std::move(U_inv), 0};
}

}  // namespace quadrk
