#include "quadrk/jacobian.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "quadrk/text.hpp"

namespace quadrk {

QuadMap::QuadMap(FieldSpec field, std::size_t nvars, std::vector<Poly> components)
    : field_(field), nvars_(nvars), components_(std::move(components)) {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const Poly& p = components_[i];
    if (!(p.field() == field_)) fail(ErrorCode::FieldMismatch, "map component in a different field");
    if (p.nvars() != nvars_) fail(ErrorCode::ArityMismatch, "map component with wrong variable count");
    if (p.degree() > 2) {
      fail(ErrorCode::DegreeTooHigh, "component H" + std::to_string(i + 1) + " has degree " + std::to_string(p.degree()));
    }
  }
}

QuadMap QuadMap::parse(FieldSpec field, std::size_t nvars, std::initializer_list<const char*> components) {
  std::vector<Poly> ps;
  for (const char* c : components) ps.push_back(parse_poly(c, field, nvars));
  return QuadMap(field, nvars, std::move(ps));
}

bool QuadMap::is_quadratic_homogeneous() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Poly& p) { return p.is_zero() || (p.degree() == 2 && p.is_homogeneous()); });
}

QuadMap QuadMap::quadratic_part() const {
  std::vector<Poly> ps;
  for (const auto& p : components_) ps.push_back(p.homogeneous_part(2));
  return QuadMap(field_, nvars_, std::move(ps));
}

QuadMap QuadMap::without_constant() const {
  std::vector<Poly> ps;
  for (const auto& p : components_) ps.push_back(p - Poly::constant(p.constant_term(), nvars_));
  return QuadMap(field_, nvars_, std::move(ps));
}

std::string QuadMap::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    out += "H" + std::to_string(i + 1) + " = " + components_[i].to_string() + "\n";
  }
  return out;
}

DegOneMatrix jacobian_of(const QuadMap& h) {
  PolyMatrix j(h.field(), h.size(), h.nvars(), h.nvars());
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t k = 0; k < h.nvars(); ++k) j(i, k) = h[i].derivative(k);
  }
  return DegOneMatrix::from_poly_matrix(j);
}

JacobianCheck is_jacobian(const DegOneMatrix& m) {
  JacobianCheck out;
  const FieldSpec f = m.field();
  const std::size_t n = m.nvars();
  if (m.cols() != n) {
    out.reason = "column count differs from variable count";
    return out;
  }
  const bool char2 = !f.has_half();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& cjk = m.coefficient(k)(i, j);
        if (k > j && cjk != m.coefficient(j)(i, k)) {
          out.i = i, out.j = j, out.k = k;
          out.reason = "mixed partials differ";
          return out;
        }
        if (char2 && k == j && !cjk.is_zero()) {
          out.i = i, out.j = j, out.k = k;
          out.reason = "x" + std::to_string(k + 1) + " term on the diagonal has no antiderivative in characteristic 2";
          return out;
        }
      }
    }
  }

  std::vector<Poly> comps;
  const Scalar half = char2 ? Scalar::one(f) : Scalar::half(f);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Poly h(f, n);
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      h.add_term(e, m.constant()(i, j));
      for (std::size_t k = j; k < n; ++k) {
        const Scalar& c = m.coefficient(k)(i, j);
        if (c.is_zero()) continue;
        Exponents q(n, 0);
        ++q[j];
        ++q[k];
        // x_j^2 carries c/2; a mixed term x_j x_k appears twice in the
        // symmetric sum and so carries c.
        h.add_term(q, k == j ? c * half : c);
      }
    }
    comps.push_back(std::move(h));
  }
  out.map = QuadMap(f, n, std::move(comps));
  if (jacobian_of(*out.map) != m) throw InternalContradiction("integrated map does not reproduce its Jacobian");
  return out;
}

PolyMatrix hessian(const Poly& h) {
  const std::size_t n = h.nvars();
  PolyMatrix r(h.field(), n, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly di = h.derivative(i);
    for (std::size_t j = 0; j < n; ++j) r(i, j) = di.derivative(j);
  }
  return r;
}

HessianIntegral hessian_integrate(const DegOneMatrix& m) {
  HessianIntegral out;
  const FieldSpec f = m.field();
  const std::size_t n = m.nvars();
  if (!m.is_square() || m.rows() != n) {
    out.reason = "matrix must be n x n in n variables";
    return out;
  }
  if (m.transpose() != m) {
    out.reason = "matrix is not symmetric";
    return out;
  }
  const Scalar two(f, 2);
  for (std::size_t i = 0; i < n; ++i) {
    // A term of M_ii of x_i-degree d comes from a term of h of x_i-degree d + 2.
    const Poly mii = m.entry(i, i);
    for (const auto& [e, c] : mii.terms()) {
      if ((Scalar(f, static_cast<long>(e[i])) + two).is_zero()) {
        out.index = i;
        out.reason = "diagonal entry " + std::to_string(i + 1) + " has a term of x" + std::to_string(i + 1) +
                     "-degree equal to -2 in the field";
        return out;
      }
    }
  }
  const JacobianCheck jac = is_jacobian(m);
  if (!jac) {
    out.index = jac.i;
    out.reason = jac.reason;
    return out;
  }
  const QuadMap& H = *jac.map;

  std::map<Exponents, Scalar, GrlexGreater> coeffs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [u, c] : H[i].terms()) {
      Exponents t = u;
      ++t[i];
      if (coeffs.count(t)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (t[k] == 0) continue;
        const Scalar deg(f, static_cast<long>(t[k]));
        if (deg.is_zero()) continue;
        Exponents v = t;
        --v[k];
        coeffs.try_emplace(t, H[k].coefficient(v) / deg);
        break;
      }
    }
  }
  Poly h(f, n);
  for (const auto& [t, c] : coeffs) h.add_term(t, c);
  if (hessian(h) != m.to_poly_matrix()) {
    out.reason = "no cubic potential reproduces the matrix";
    return out;
  }
  out.h = std::move(h);
  return out;
}

QuadMap compose_linear(const QuadMap& h, const Transform& tf) {
  const ConstMatrix& S = tf.S();
  const ConstMatrix& T = tf.T();
  if (S.cols() != h.size() || T.rows() != h.nvars()) fail(ErrorCode::DimensionMismatch, "S H(Tx) dimensions");
  const FieldSpec f = h.field();
  const std::vector<Scalar> zero(h.nvars(), Scalar(f));
  std::vector<Poly> sub;
  for (const auto& p : h.components()) sub.push_back(p.substitute_affine(T, zero));
  std::vector<Poly> out;
  for (std::size_t i = 0; i < S.rows(); ++i) {
    Poly r(f, h.nvars());
    for (std::size_t k = 0; k < sub.size(); ++k) {
      if (!S(i, k).is_zero()) r += sub[k].scale(S(i, k));
    }
    out.push_back(std::move(r));
  }
  return QuadMap(f, h.nvars(), std::move(out));
}

namespace {

// Exponent vectors in k variables of total degree <= d, grlex ascending.
std::vector<Exponents> monomials_up_to(std::size_t k, std::size_t d) {
  std::vector<Exponents> out;
  Exponents e(k, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
    if (pos + 1 == k) {
      e[pos] = static_cast<std::uint16_t>(left);
      out.push_back(e);
      return;
    }
    for (std::size_t a = left + 1; a-- > 0;) {
      e[pos] = static_cast<std::uint16_t>(a);
      rec(pos + 1, left - a);
    }
  };
  for (std::size_t t = 0; t <= d; ++t) {
    const std::size_t start = out.size();
    if (k == 0) {
      if (t == 0) out.push_back(e);
      continue;
    }
    rec(0, t);
    // within a degree, ascending grlex puts lexicographically smaller first
    std::reverse(out.begin() + static_cast<std::ptrdiff_t>(start), out.end());
  }
  return out;
}

bool support_less(const Poly& a, const Poly& b) {
  GrlexGreater gt;
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return gt(ib->first, ia->first);
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

}  // namespace

Poly evaluate_relation(const Poly& f, const QuadMap& h, std::span<const std::size_t> subset) {
  std::vector<Poly> images;
  for (std::size_t s : subset) {
    if (s >= h.size()) fail(ErrorCode::IndexOutOfRange, "component index " + std::to_string(s + 1));
    images.push_back(h[s]);
  }
  if (images.empty()) return Poly::constant(f.constant_term(), h.nvars());
  return f.compose(images);
}

Annihilator annihilator_search(const QuadMap& h, std::span<const std::size_t> subset, std::size_t max_degree) {
  if (subset.empty()) fail(ErrorCode::PreconditionViolated, "annihilator search needs at least one component");
  if (max_degree == 0) fail(ErrorCode::PreconditionViolated, "annihilator degree bound must be at least 1");
  for (std::size_t s : subset) {
    if (s >= h.size()) fail(ErrorCode::IndexOutOfRange, "component index " + std::to_string(s + 1));
  }
  const FieldSpec f = h.field();
  const std::size_t k = subset.size();
  Annihilator out;
  for (std::size_t d = 1; d <= max_degree; ++d) {
    out.searched_degree = d;
    const auto monos = monomials_up_to(k, d);
    std::vector<Poly> values;
    std::map<Exponents, std::size_t, GrlexGreater> row_of;
    for (const auto& e : monos) {
      Poly y(f, k);
      y.add_term(e, Scalar::one(f));
      values.push_back(evaluate_relation(y, h, subset));
      for (const auto& [x, c] : values.back().terms()) row_of.try_emplace(x, row_of.size());
    }
    ConstMatrix sys(f, row_of.size(), monos.size());
    for (std::size_t col = 0; col < monos.size(); ++col) {
      for (const auto& [x, c] : values[col].terms()) sys(row_of.at(x), col) = c;
    }
    const auto ker = kernel(sys);
    if (ker.empty()) continue;

    std::optional<Poly> best;
    for (const auto& v : ker) {
      Poly cand(f, k);
      for (std::size_t col = 0; col < monos.size(); ++col) cand.add_term(monos[col], v[col]);
      const Scalar lead = cand.terms().rbegin()->second;
      cand = cand.scale(lead.inv());
      if (!best || cand.size() < best->size() || (cand.size() == best->size() && support_less(cand, *best))) {
        best = std::move(cand);
      }
    }
    if (!evaluate_relation(*best, h, subset).is_zero()) {
      throw InternalContradiction("annihilator kernel vector does not vanish on the map");
    }
    out.relation = std::move(best);
    return out;
  }
  return out;
}

}  // namespace quadrk
