#include "quadrk/triangularize.hpp"

#include <array>

#include "quadrk/degmat.hpp"

namespace quadrk {

namespace {

[[noreturn]] void contradiction(const std::string& what) { throw InternalContradiction(what); }

[[noreturn]] void precondition(const std::string& what) { fail(ErrorCode::PreconditionViolated, what); }

bool entry_zero(const DegOneMatrix& m, std::size_t i, std::size_t j) {
  if (!m.constant()(i, j).is_zero()) return false;
  for (std::size_t v = 0; v < m.nvars(); ++v) {
    if (!m.coefficient(v)(i, j).is_zero()) return false;
  }
  return true;
}

// kappa with p = kappa * q, if it exists; q must be nonzero.
std::optional<Scalar> proportion(const Poly& p, const Poly& q) {
  const auto& [e, c] = *q.terms().begin();
  const Scalar kappa = p.coefficient(e) / c;
  if (p != q.scale(kappa)) return std::nullopt;
  return kappa;
}

ConstMatrix rev(FieldSpec f, std::size_t n) { return ConstMatrix::reversal(f, n); }

ConstMatrix diag(FieldSpec f, const ConstMatrix& a, const ConstMatrix& b) {
  const std::array<ConstMatrix, 2> blocks{a, b};
  return ConstMatrix::block_diagonal(f, blocks);
}

// P with P^{-1} N P strictly lower, for a nilpotent N whose coefficient
// matrices are all multiples of one constant matrix.
ConstMatrix proportional_block(const DegOneMatrix& n) {
  const FieldSpec f = n.field();
  const auto parts = n.all_coefficients();
  const ConstMatrix* base = nullptr;
  for (const auto& c : parts) {
    if (!c.is_zero()) {
      base = &c;
      break;
    }
  }
  if (!base) return ConstMatrix::identity(f, n.rows());
  // a nonzero entry of the base matrix reads off each multiplier
  std::size_t bi = 0, bj = 0;
  while ((*base)(bi, bj).is_zero()) {
    if (++bj == base->cols()) bj = 0, ++bi;
  }
  for (const auto& c : parts) {
    if (c != base->scale(c(bi, bj) / (*base)(bi, bj))) contradiction("quadnil (i): entries are not proportional");
  }
  const auto sn = strongly_nilpotent_triangularize(DegOneMatrix(*base, {}));
  if (!sn.triangularizable()) contradiction("quadnil (i): constant factor is not nilpotent");
  return *sn.U;
}

void require_constant(const DegOneMatrix& n, const ConstMatrix& expected, const char* which) {
  if (n.constant() != expected) precondition(std::string("quadnil ") + which + ": N(0) has the wrong shape");
  if (!is_nilpotent(n)) fail(ErrorCode::NotNilpotent, std::string("quadnil ") + which + ": N is not nilpotent");
}

ConstMatrix unit(FieldSpec f, std::size_t n, std::initializer_list<std::pair<std::size_t, std::size_t>> ones) {
  ConstMatrix m(f, n, n);
  for (const auto& [i, j] : ones) m(i, j) = Scalar::one(f);
  return m;
}

// Sub-block of a 3x3 block-upper-triangular N handled by case I.
ConstMatrix upper_block_conjugator(const DegOneMatrix& n, bool leading_pair) {
  const FieldSpec f = n.field();
  const ConstMatrix one = ConstMatrix::identity(f, 1);
  if (leading_pair) {
    const ConstMatrix p = quadnil_case(n.block(0, 0, 2, 2), QuadnilCase::I).P;
    return diag(f, p * rev(f, 2), one) * rev(f, 3);
  }
  const ConstMatrix p = quadnil_case(n.block(1, 1, 2, 2), QuadnilCase::I).P;
  return diag(f, one, p * rev(f, 2)) * rev(f, 3);
}

}  // namespace

std::string_view to_string(QuadnilCase c) {
  switch (c) {
    case QuadnilCase::I: return "i";
    case QuadnilCase::II: return "ii";
    case QuadnilCase::III: return "iii";
    case QuadnilCase::IVUpper: return "iv_upper";
    case QuadnilCase::IVNconj: return "iv_nconj";
  }
  return "?";
}

QuadnilOutcome quadnil_case(const DegOneMatrix& n, QuadnilCase which) {
  const FieldSpec f = n.field();
  const bool small = which == QuadnilCase::I || which == QuadnilCase::II;
  if (!n.is_square() || n.rows() != (small ? 2u : 3u)) precondition("quadnil: block has the wrong size");

  switch (which) {
    case QuadnilCase::I:
      require_constant(n, ConstMatrix(f, 2, 2), "(i)");
      return {QuadnilCase::I, proportional_block(n), std::nullopt};

    case QuadnilCase::II:
      require_constant(n, unit(f, 2, {{1, 0}}), "(ii)");
      if (!n.is_strictly_lower()) contradiction("quadnil (ii): N is not strictly lower triangular");
      return {QuadnilCase::II, ConstMatrix::identity(f, 2), std::nullopt};

    case QuadnilCase::III: {
      require_constant(n, unit(f, 3, {{0, 2}}), "(iii)");
      if (!entry_zero(n, 2, 0)) contradiction("quadnil (iii): entry (3,1) is nonzero");
      const bool b_zero = entry_zero(n, 1, 0), c_zero = entry_zero(n, 2, 1);
      if (!b_zero && !c_zero) contradiction("quadnil (iii): bc != 0");
      // b = 0: blocks 1 + 2; c = 0: blocks 2 + 1
      return {QuadnilCase::III, upper_block_conjugator(n, !b_zero), std::nullopt};
    }

    case QuadnilCase::IVUpper:
    case QuadnilCase::IVNconj: {
      require_constant(n, unit(f, 3, {{0, 1}, {1, 2}}), "(iv)");
      if (n.is_upper()) {
        for (std::size_t i = 0; i < 3; ++i) {
          if (!entry_zero(n, i, i)) contradiction("quadnil (iv): upper triangular N has a nonzero diagonal");
        }
        return {QuadnilCase::IVUpper, rev(f, 3), std::nullopt};
      }
      const Poly a = -n.entry(0, 0), b = n.entry(1, 0), c = -n.entry(2, 2);
      if (!entry_zero(n, 2, 0)) contradiction("quadnil (iv): entry (3,1) is nonzero");
      if (b.is_zero()) contradiction("quadnil (iv): b = 0 but N is not upper triangular");
      if (a != c) contradiction("quadnil (iv): a != c");
      const auto kappa = proportion(a, b);
      if (!kappa) contradiction("quadnil (iv): b does not divide a");
      ConstMatrix T = ConstMatrix::identity(f, 3);
      T(0, 1) = -*kappa;
      T(1, 2) = -*kappa;
      const DegOneMatrix nc = conjugate(n, T);
      const Poly f1 = nc.entry(0, 1), bb = nc.entry(1, 0);
      const bool shape = entry_zero(nc, 0, 0) && entry_zero(nc, 1, 1) && entry_zero(nc, 2, 2) &&
                         entry_zero(nc, 0, 2) && entry_zero(nc, 2, 0) && nc.entry(1, 2) == f1 &&
                         nc.entry(2, 1) == -bb && !bb.is_zero() && f1.constant_term() == Scalar::one(f);
      if (!shape) contradiction("quadnil (iv): conjugate is not of the Nconj form");
      return {QuadnilCase::IVNconj, T, NconjData{f1 - Poly::constant(Scalar::one(f), n.nvars()), bb}};
    }
  }
  precondition("quadnil: unknown case");
}

bool verify_triangularization(const DegOneMatrix& m, const ConstMatrix& U, const ConstMatrix& U_inv) {
  if (!m.is_square() || U.rows() != m.rows() || !U.is_square() || U_inv.rows() != U.rows() || !U_inv.is_square())
    return false;
  if (!(U * U_inv).is_identity()) return false;
  return m.sandwich(U_inv, U).is_strictly_lower();
}

namespace {

// Leading 2x2 block of the column case: P2 with P2^{-1} N P2 strictly lower.
ConstMatrix column_block(const DegOneMatrix& n, std::vector<std::string>& trace) {
  const FieldSpec f = n.field();
  if (rank(n.constant()) == 0) {
    trace.push_back("leading 2x2 block: N(0) = 0, quadnil (i)");
    return quadnil_case(n, QuadnilCase::I).P;
  }
  const JordanResult jr = nilpotent_jordan(n.constant());
  // Jordan form E12; reversing the basis gives E21
  const ConstMatrix q = jr.P * rev(f, 2);
  trace.push_back("leading 2x2 block: N(0) similar to E21, quadnil (ii)");
  return q * quadnil_case(conjugate(n, q), QuadnilCase::II).P;
}

// Leading 3x3 block of the row case: P3 with P3^{-1} N P3 strictly lower.
ConstMatrix row_block(DegOneMatrix n, std::vector<std::string>& trace) {
  const FieldSpec f = n.field();
  if (rank(n.constant()) == 0) {
    std::size_t i = 0;
    for (; i < n.nvars(); ++i) {
      std::vector<Scalar> c(n.nvars(), Scalar(f));
      c[i] = Scalar::one(f);
      const DegOneMatrix shifted = shift_vars(n, c);
      if (rank(shifted.constant()) != 0) {
        n = shifted;
        break;
      }
    }
    if (i == n.nvars()) {
      // N is zero
      trace.push_back("leading 3x3 block is zero");
      return ConstMatrix::identity(f, 3);
    }
    trace.push_back("rk N(0) = 0: substitute x" + std::to_string(i + 1) + " -> x" + std::to_string(i + 1) + " + 1");
  }
  const JordanResult jr = nilpotent_jordan(n.constant());
  if (jr.block_sizes.front() == 2) {
    // Jordan form E12 on basis (p1, p2, p3); reorder to (p1, p3, p2) for E13
    const std::array<std::size_t, 3> perm{0, 2, 1};
    const ConstMatrix q = jr.P * ConstMatrix::permutation(f, perm);
    trace.push_back("rk N(0) = 1: quadnil (iii)");
    return q * quadnil_case(conjugate(n, q), QuadnilCase::III).P;
  }
  const QuadnilOutcome o = quadnil_case(conjugate(n, jr.P), QuadnilCase::IVUpper);
  if (o.which == QuadnilCase::IVNconj) {
    contradiction("rank-2 nilpotent Jacobian reached the Nconj form with f = " + o.nconj->f.to_string() +
                  ", b = " + o.nconj->b.to_string());
  }
  trace.push_back("rk N(0) = 2: quadnil (iv), N upper triangular");
  return jr.P * o.P;
}

}  // namespace

TriangularizationCertificate triangularize_rank_le2(const QuadMap& h) {
  const FieldSpec f = h.field();
  const std::size_t n = h.nvars();
  if (h.size() != n) fail(ErrorCode::DimensionMismatch, "triangularization needs a square map");
  const DegOneMatrix m = jacobian_of(h);
  if (!is_nilpotent(m)) fail(ErrorCode::NotNilpotent, "Jacobian matrix is not nilpotent");
  const std::size_t r = rank_symbolic(m);
  if (r > 2) fail(ErrorCode::RankTooHigh, "Jacobian rank is " + std::to_string(r));

  TriangularizationCertificate cert{ConstMatrix::identity(f, n), ConstMatrix::identity(f, n), std::nullopt, {}};
  ConstMatrix U = ConstMatrix::identity(f, n);
  if (m.is_strictly_lower()) {
    cert.trace.push_back(r == 0 ? "zero Jacobian" : "already strictly lower triangular");
  } else {
    const ClassificationReport rep = r == 1 ? classify_rank1(m, true) : classify_rank2(m, true);
    cert.tag = rep.tag;
    cert.trace.push_back(std::string("classified as ") + std::string(to_string(rep.tag)));
    const ConstMatrix& S = rep.tf.S();
    const ConstMatrix& S_inv = rep.tf.S_inv();
    const ConstMatrix& T = rep.tf.T();
    const ConstMatrix& T_inv = rep.tf.T_inv();
    switch (rep.tag) {
      case NormalFormTag::R1_ColumnOnly:
      case NormalFormTag::R1_ColumnHalf:
        U = T;
        cert.trace.push_back("T^{-1} M T has one nonzero column");
        break;
      case NormalFormTag::R1_RowOnly:
        U = S_inv * rev(f, n);
        cert.trace.push_back("S M S^{-1} has one nonzero row; reverse the basis");
        break;
      case NormalFormTag::R2_TwoColumns: {
        const DegOneMatrix lead = m.sandwich(T_inv, T).block(0, 0, 2, 2);
        U = T * diag(f, column_block(lead, cert.trace), ConstMatrix::identity(f, n - 2));
        break;
      }
      case NormalFormTag::R2_TwoRows:
      case NormalFormTag::R2_HookHalf:
      case NormalFormTag::R2_Antisym: {
        if (n < 3) contradiction("row case with fewer than 3 rows");
        const DegOneMatrix lead = m.sandwich(S, S_inv).block(0, 0, 3, 3);
        const ConstMatrix p3 = row_block(lead, cert.trace) * rev(f, 3);
        U = S_inv * diag(f, p3, ConstMatrix::identity(f, n - 3)) * rev(f, n);
        break;
      }
      default:
        contradiction(std::string("unexpected tag ") + std::string(to_string(rep.tag)) + " for a Jacobian matrix");
    }
  }
  const ConstMatrix U_inv = invert(U);
  if (!verify_triangularization(m, U, U_inv)) contradiction("certificate failed re-verification");
  cert.U = U;
  cert.U_inv = U_inv;
  return cert;
}

Jh2Report jh2_suite(const QuadMap& h) {
  const FieldSpec f = h.field();
  const DegOneMatrix m = jacobian_of(h);
  Jh2Report rep;
  const PolyMatrix x = m.to_poly_matrix();
  rep.square_zero = m.is_square() && (x * x).is_zero();

  // tuples 0, 1, 2 are x, y, z
  const auto at = [&](const DegOneMatrix& a, std::size_t t) {
    return evaluate(a, GenericTuple{a.nvars(), t}, 3);
  };
  const bool square = m.is_square();
  if (square) {
    const PolyMatrix mx = at(m, 0), my = at(m, 1), mz = at(m, 2);
    const PolyMatrix xy = mx * my;
    rep.pair_product_raw_zero = xy.is_zero();
    rep.triple_product_raw_zero = (xy * mz).is_zero();
    if (rep.square_zero) {
      rep.anticomm_holds = (my * mx + xy).is_zero();
      if (f.has_half()) {
        rep.triple_product_zero = rep.triple_product_raw_zero;
        if (h.without_constant().is_quadratic_homogeneous()) rep.pair_product_zero = xy.is_zero();
        const DegOneMatrix q = jacobian_of(h.quadratic_part());
        rep.quadratic_pair_zero = (at(q, 0) * at(q, 1)).is_zero();
      }
    }
  }
  return rep;
}

bool generic_product_vanishes(const DegOneMatrix& m, std::size_t k) {
  if (k == 0) fail(ErrorCode::PreconditionViolated, "k must be at least 1");
  return generic_product(m, k).is_zero();
}

}  // namespace quadrk
