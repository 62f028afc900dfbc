#include "quadrk/poly.hpp"

#include <numeric>

#include "quadrk/linmat.hpp"

namespace quadrk {

std::size_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  std::size_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Poly Poly::constant(const Scalar& c, std::size_t nvars) {
  Poly p(c.field(), nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(FieldSpec field, std::size_t nvars, std::size_t i) {
  if (i >= nvars) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i + 1));
  Poly p(field, nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Scalar::one(field));
  return p;
}

Poly Poly::affine(std::span<const Scalar> coeffs, const Scalar& constant) {
  Poly p(constant.field(), coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponents e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  p.add_term(Exponents(coeffs.size(), 0), constant);
  return p;
}

void Poly::check_compatible(const Poly& o) const {
  if (!(field_ == o.field_)) fail(ErrorCode::FieldMismatch, field_.to_string() + " vs " + o.field_.to_string());
  if (nvars_ != o.nvars_) {
    fail(ErrorCode::ArityMismatch, std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) + " variables");
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.begin()->first));
}

int Poly::degree_in(std::size_t i) const {
  if (i >= nvars_) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i + 1));
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  std::size_t d = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) != d) return false;
  }
  return true;
}

Scalar Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

Scalar Poly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Scalar Poly::linear_coefficient(std::size_t i) const {
  if (i >= nvars_) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i + 1));
  Exponents e(nvars_, 0);
  e[i] = 1;
  return coefficient(e);
}

Poly Poly::homogeneous_part(int d) const {
  Poly r(field_, nvars_);
  if (d < 0) return r;
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == static_cast<std::size_t>(d)) r.terms_.emplace_hint(r.terms_.end(), e, c);
  }
  return r;
}

void Poly::add_term(const Exponents& e, const Scalar& c) {
  if (e.size() != nvars_) fail(ErrorCode::ArityMismatch, "exponent tuple length");
  if (!(c.field() == field_)) fail(ErrorCode::FieldMismatch, "coefficient field");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::add(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c.neg());
  return *this;
}

Poly Poly::sub(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::mul(const Poly& o) const {
  check_compatible(o);
  Poly r(field_, nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::scale(const Scalar& c) const {
  if (!(c.field() == field_)) fail(ErrorCode::FieldMismatch, "scale factor field");
  Poly r(field_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, a * c);
  return r;
}

Poly Poly::neg() const { return scale(Scalar(field_, -1)); }

Poly Poly::pow(unsigned k) const {
  Poly r = constant(Scalar::one(field_), nvars_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  return field_ == o.field_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

Poly Poly::derivative(std::size_t i) const {
  if (i >= nvars_) fail(ErrorCode::IndexOutOfRange, "variable index " + std::to_string(i + 1));
  Poly r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    d[i] -= 1;
    r.add_term(d, c * Scalar(field_, static_cast<long>(e[i])));
  }
  return r;
}

Poly Poly::compose(std::span<const Poly> images) const {
  if (images.size() != nvars_) fail(ErrorCode::ArityMismatch, "compose needs one image per variable");
  if (images.empty()) return *this;
  const std::size_t target = images[0].nvars();
  std::vector<std::vector<Poly>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    if (images[i].nvars() != target) fail(ErrorCode::ArityMismatch, "images differ in variable count");
    powers[i].push_back(constant(Scalar::one(field_), target));
  }
  Poly r(field_, target);
  for (const auto& [e, c] : terms_) {
    Poly t = constant(c, target);
    for (std::size_t i = 0; i < nvars_; ++i) {
      while (powers[i].size() <= e[i]) powers[i].push_back(powers[i].back() * images[i]);
      if (e[i] > 0) t = t * powers[i][e[i]];
    }
    r += t;
  }
  return r;
}

Poly Poly::substitute_affine(const ConstMatrix& A, std::span<const Scalar> c) const {
  if (A.rows() != nvars_ || A.cols() != nvars_ || c.size() != nvars_) {
    fail(ErrorCode::ArityMismatch, "substitution dimensions");
  }
  if (rank(A) != nvars_) fail(ErrorCode::SingularSubstitution, "substitution matrix is singular");
  std::vector<Poly> images;
  images.reserve(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) images.push_back(affine(A.row(i), c[i]));
  return compose(images);
}

Poly Poly::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) fail(ErrorCode::ArityMismatch, "embedding does not fit");
  Poly r(field_, new_nvars);
  for (const auto& [e, c] : terms_) {
    Exponents n(new_nvars, 0);
    std::copy(e.begin(), e.end(), n.begin() + static_cast<std::ptrdiff_t>(offset));
    r.terms_.emplace(std::move(n), c);
  }
  return r;
}

Poly Poly::divexact(const Poly& q) const {
  check_compatible(q);
  if (q.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  const auto& [lq, lc] = *q.terms_.begin();
  const Scalar lc_inv = lc.inv();
  Poly rem = *this;
  Poly quot(field_, nvars_);
  while (!rem.is_zero()) {
    const auto& [lr, rc] = *rem.terms_.begin();
    Exponents t(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (lr[i] < lq[i]) fail(ErrorCode::PreconditionViolated, "divexact: divisor does not divide");
      t[i] = static_cast<std::uint16_t>(lr[i] - lq[i]);
    }
    Poly term(field_, nvars_);
    term.add_term(t, rc * lc_inv);
    quot += term;
    rem -= term * q;
  }
  return quot;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

}  // namespace quadrk
