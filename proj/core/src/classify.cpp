#include "quadrk/classify.hpp"

namespace quadrk {

namespace {

[[noreturn]] void contradiction(const std::string& what) { throw InternalContradiction("classification: " + what); }

// Coefficient vector (constant, x1, ..., xn) of an affine polynomial.
Vector affine_coefficients(const Poly& p) {
  Vector v{p.constant_term()};
  for (std::size_t i = 0; i < p.nvars(); ++i) v.push_back(p.linear_coefficient(i));
  return v;
}

// lambda with p = lambda * q for affine q != 0.
std::optional<Scalar> ratio(const Poly& p, const Poly& q) {
  const Vector vp = affine_coefficients(p), vq = affine_coefficients(q);
  std::optional<Scalar> lambda;
  for (std::size_t k = 0; k < vq.size(); ++k) {
    if (!vq[k].is_zero()) {
      lambda = vp[k] / vq[k];
      break;
    }
  }
  if (!lambda) return std::nullopt;
  for (std::size_t k = 0; k < vq.size(); ++k) {
    if (vp[k] != *lambda * vq[k]) return std::nullopt;
  }
  return lambda;
}

// Invertible A with A * v = e_0 for v != 0.
ConstMatrix send_to_first(FieldSpec f, const Vector& v) {
  const std::vector<Vector> prefix{v};
  const auto basis = complete_basis(f, v.size(), prefix);
  return invert(ConstMatrix::from_columns(f, v.size(), basis));
}

ConstMatrix embed(FieldSpec f, std::size_t n, std::size_t at, const ConstMatrix& block) {
  ConstMatrix r = ConstMatrix::identity(f, n);
  r.set_block(at, at, block);
  return r;
}

ConstMatrix transposition(FieldSpec f, std::size_t n, std::size_t a, std::size_t b) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::swap(perm[a], perm[b]);
  return ConstMatrix::permutation(f, perm);
}

// Running state: N = S * sigma(M) * T for a variable substitution sigma that
// is never recorded, since every shape predicate is stable under it.
struct Work {
  DegOneMatrix N;
  ConstMatrix S, T;
  std::vector<std::string> trace;

  FieldSpec field() const { return N.field(); }

  void rows(const ConstMatrix& R, std::string what) {
    N = N.sandwich(R, ConstMatrix::identity(field(), N.cols()));
    S = R * S;
    trace.push_back(std::move(what));
  }
  void cols(const ConstMatrix& C, std::string what) {
    N = N.sandwich(ConstMatrix::identity(field(), N.rows()), C);
    T = T * C;
    trace.push_back(std::move(what));
  }
  void shift(std::size_t var, long by) {
    std::vector<Scalar> c(N.nvars(), Scalar(field()));
    c[var] = Scalar(field(), by);
    N = shift_vars(N, c);
    trace.push_back("substitute x" + std::to_string(var + 1) + (by > 0 ? " + " : " - ") + std::to_string(by > 0 ? by : -by));
  }
  void swap_coefficients(std::size_t var) {
    N = coefficient_swap(N, var);
    trace.push_back("swap constant and x" + std::to_string(var + 1) + " coefficient matrices");
  }
  // Makes N(0) nonzero; no-op if it already is.
  void escape_zero_constant() {
    if (!N.constant().is_zero()) return;
    for (std::size_t i = 0; i < N.nvars(); ++i) {
      if (!N.coefficient(i).is_zero()) {
        shift(i, 1);
        return;
      }
    }
    contradiction("nonzero rank with all coefficient matrices zero");
  }
  // Row and column operations with N(0) -> [[I_r, 0], [0, 0]].
  void normalize_constant() {
    const FieldSpec f = field();
    const auto rr = rref(N.constant());
    ConstMatrix Tinv(f, N.cols(), N.cols());
    std::size_t next = 0;
    for (std::size_t i = 0; i < rr.rank; ++i, ++next) {
      for (std::size_t j = 0; j < N.cols(); ++j) Tinv(next, j) = rr.reduced(i, j);
    }
    std::vector<bool> pivot(N.cols(), false);
    for (std::size_t p : rr.pivots) pivot[p] = true;
    for (std::size_t j = 0; j < N.cols(); ++j) {
      if (!pivot[j]) Tinv(next++, j) = Scalar::one(f);
    }
    rows(rr.row_ops, "row-reduce the constant part");
    cols(invert(Tinv), "column-reduce the constant part");
  }
};

bool entry_zero(const DegOneMatrix& m, std::size_t i, std::size_t j) {
  for (const auto& c : m.all_coefficients()) {
    if (!c(i, j).is_zero()) return false;
  }
  return true;
}

NormalFormTag first_matching(const DegOneMatrix& m, std::initializer_list<NormalFormTag> order) {
  for (NormalFormTag t : order) {
    if (shape_predicate(m, t)) return t;
  }
  contradiction("no normal form matches the reduced matrix");
}

ClassificationReport finish(const DegOneMatrix& m, Work& w, NormalFormTag tag, std::size_t r, JacobianFlags flags) {
  Transform tf(w.S, w.T);
  DegOneMatrix nf = apply_transform(m, tf);
  if (!shape_predicate(nf, tag)) contradiction(std::string(to_string(tag)) + " shape lost when replayed on the input");
  return ClassificationReport{tag, std::move(tf), std::move(nf), r, std::move(flags), std::move(w.trace)};
}

// Jacobian refinement of a column: rows >= from of the matrix are nonzero
// only in column 1, where (after x = Tx) they read u_i x1 + w_i. With u, w
// independent and 1/2 in K, rows from, from+1 become 2 x1 and 1/2; otherwise
// the rows collapse onto row `from`. Returns true in the first case.
bool refine_column(const DegOneMatrix& m, Work& w, std::size_t from) {
  const FieldSpec f = m.field();
  const DegOneMatrix nf = apply_transform(m, Transform(w.S, w.T));
  const std::vector<Scalar> zero(m.nvars(), Scalar(f));
  const DegOneMatrix jt = substitute_affine(nf, w.T, zero);
  const std::size_t k = m.rows() - from;
  Vector u, c;
  for (std::size_t i = from; i < m.rows(); ++i) {
    for (std::size_t j = 1; j < m.cols(); ++j) {
      if (!entry_zero(jt, i, j)) contradiction("refinement row has entries outside column 1");
    }
    const Poly e = jt.entry(i, 0);
    for (std::size_t v = 1; v < m.nvars(); ++v) {
      if (!e.linear_coefficient(v).is_zero()) contradiction("Jacobian column entry depends on a variable other than x1");
    }
    u.push_back(m.nvars() ? e.linear_coefficient(0) : Scalar(f));
    c.push_back(e.constant_term());
  }
  if (!f.has_half() && !is_zero(u)) contradiction("Jacobian column is not constant in characteristic 2");

  const std::vector<Vector> uc{u, c};
  if (f.has_half() && rank(ConstMatrix::from_columns(f, k, uc)) == 2) {
    const Vector half_u = [&] {
      Vector r;
      for (const auto& s : u) r.push_back(s * Scalar::half(f));
      return r;
    }();
    Vector two_c;
    for (const auto& s : c) two_c.push_back(s * Scalar(f, 2));
    const std::vector<Vector> prefix{half_u, two_c};
    const auto basis = complete_basis(f, k, prefix);
    w.rows(embed(f, m.rows(), from, invert(ConstMatrix::from_columns(f, k, basis))),
           "Jacobian refinement: column entries x1^2 and x1/2 derivatives");
    return true;
  }
  if (f.has_half() && is_zero(u) && !is_zero(c) && k >= 2) {
    // constant column: send it to 1/2 in the second slot
    ConstMatrix q(f, k, k);
    q(0, 1) = Scalar::one(f);
    q(1, 0) = Scalar::half(f);
    for (std::size_t i = 2; i < k; ++i) q(i, i) = Scalar::one(f);
    w.rows(embed(f, m.rows(), from, q * send_to_first(f, c)), "Jacobian refinement: constant column to 1/2");
    return true;
  }
  const Vector& g = is_zero(u) ? c : u;
  if (is_zero(g)) contradiction("refinement column is zero");
  w.rows(embed(f, m.rows(), from, send_to_first(f, g)), "Jacobian refinement: collapse column onto one row");
  return false;
}

JacobianFlags jacobian_flags(const DegOneMatrix& m, bool jacobian) {
  JacobianFlags flags;
  if (!jacobian) return flags;
  if (!is_jacobian(m)) fail(ErrorCode::PreconditionViolated, "Jacobian refinement requested for a non-Jacobian matrix");
  flags.is_jacobian = true;
  return flags;
}

}  // namespace

ClassificationReport classify_rank1(const DegOneMatrix& m, bool jacobian) {
  const std::size_t r = rank_symbolic(m);
  if (r != 1) fail(ErrorCode::RankMismatch, "expected rank 1, found " + std::to_string(r));
  JacobianFlags flags = jacobian_flags(m, jacobian);
  const FieldSpec f = m.field();
  Work w{m, ConstMatrix::identity(f, m.rows()), ConstMatrix::identity(f, m.cols()), {}};

  w.escape_zero_constant();
  w.normalize_constant();
  for (std::size_t i = 1; i < m.rows(); ++i) {
    for (std::size_t j = 1; j < m.cols(); ++j) {
      if (!entry_zero(w.N, i, j)) contradiction("rank-1 matrix has entries outside row 1 and column 1");
    }
  }
  NormalFormTag tag = first_matching(w.N, {NormalFormTag::R1_ColumnOnly, NormalFormTag::R1_RowOnly});

  if (flags.is_jacobian && tag == NormalFormTag::R1_ColumnOnly) {
    flags.refinement_applied = true;
    if (refine_column(m, w, 0)) {
      tag = NormalFormTag::R1_ColumnHalf;
    } else if (!f.has_half()) {
      tag = NormalFormTag::R1_RowOnly;
      flags.note = "constant Jacobian column in characteristic 2 gives the row form";
    }
  }
  return finish(m, w, tag, r, std::move(flags));
}

ClassificationReport classify_rank2(const DegOneMatrix& m, bool jacobian) {
  const std::size_t r = rank_symbolic(m);
  if (r != 2) fail(ErrorCode::RankMismatch, "expected rank 2, found " + std::to_string(r));
  JacobianFlags flags = jacobian_flags(m, jacobian);
  const FieldSpec f = m.field();
  const std::size_t nr = m.rows(), nc = m.cols();
  Work w{m, ConstMatrix::identity(f, nr), ConstMatrix::identity(f, nc), {}};

  const std::initializer_list<NormalFormTag> order{NormalFormTag::R2_TwoColumns, NormalFormTag::R2_TwoRows,
                                                   NormalFormTag::R2_Hook, NormalFormTag::R2_Antisym};
  std::optional<NormalFormTag> found;

  // (a) make the constant part of rank 2
  w.escape_zero_constant();
  if (rank(w.N.constant()) == 1) {
    w.normalize_constant();
    w.rows(transposition(f, nr, 0, 1), "move the constant 1 to position (2,1)");
    bool hook_after_swap = true;
    for (std::size_t i = 0; i < nr && hook_after_swap; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        if (i != 1 && j != 0 && !entry_zero(w.N, i, j)) {
          hook_after_swap = false;
          break;
        }
      }
    }
    if (hook_after_swap) {
      w.rows(transposition(f, nr, 0, 1), "swap rows 1 and 2 to reach the hook form");
      found = first_matching(w.N, order);
    } else {
      std::size_t pr = nr, pc = nc;
      for (std::size_t i = 0; i < nr && pr == nr; ++i) {
        if (i == 1) continue;
        for (std::size_t j = 1; j < nc; ++j) {
          if (!entry_zero(w.N, i, j)) {
            pr = i;
            pc = j;
            break;
          }
        }
      }
      if (pr != 0) w.rows(transposition(f, nr, 0, pr), "bring a nonzero entry to row 1");
      if (pc != 1) w.cols(transposition(f, nc, 1, pc), "bring a nonzero entry to column 2");
      const Poly e01 = w.N.entry(0, 1);
      std::size_t j = 0;
      while (j < m.nvars() && e01.linear_coefficient(j).is_zero()) ++j;
      if (j == m.nvars()) contradiction("entry (1,2) has no linear part");
      const ConstMatrix C = w.N.coefficient(j);
      if (rank(C) >= 2) {
        w.swap_coefficients(j);
      } else {
        const Scalar c01 = C(0, 1);
        ConstMatrix ops = ConstMatrix::identity(f, nc);
        for (std::size_t k = 0; k < nc; ++k) {
          if (k != 1) ops(1, k) = -(C(0, k) / c01);
        }
        ops(1, 1) = c01.inv();
        w.cols(ops, "clear the first row of the x" + std::to_string(j + 1) + " coefficient matrix");
        const ConstMatrix C2 = w.N.coefficient(j);
        ConstMatrix rops = ConstMatrix::identity(f, nr);
        for (std::size_t k = 1; k < nr; ++k) rops(k, 0) = -C2(k, 1);
        w.rows(rops, "reduce the x" + std::to_string(j + 1) + " coefficient matrix to E12");
        w.shift(j, -1);
      }
      if (rank(w.N.constant()) != 2) contradiction("constant part did not reach rank 2");
    }
  }

  if (!found) {
    // (b) constant part [[0,-1],[1,0]] in the leading block
    w.normalize_constant();
    ConstMatrix J = ConstMatrix::identity(f, nr);
    J(0, 0) = Scalar(f);
    J(1, 1) = Scalar(f);
    J(0, 1) = Scalar(f, -1);
    J(1, 0) = Scalar(f, 1);
    w.rows(J, "constant part to [[0,-1],[1,0]]");
    for (std::size_t i = 2; i < nr; ++i) {
      for (std::size_t j = 2; j < nc; ++j) {
        if (!entry_zero(w.N, i, j)) contradiction("entries outside the first two rows and columns");
      }
    }

    // (c) N = [[A, B], [C, 0]]
    bool B_zero = true, C_zero = true;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 2; j < nc; ++j) B_zero = B_zero && entry_zero(w.N, i, j);
    }
    for (std::size_t i = 2; i < nr; ++i) {
      for (std::size_t j = 0; j < 2; ++j) C_zero = C_zero && entry_zero(w.N, i, j);
    }
    if (B_zero || C_zero) {
      found = first_matching(w.N, order);
    } else {
      const std::size_t width = m.nvars() + 1;
      // columns of C and rows of B as flattened coefficient vectors
      ConstMatrix cc(f, (nr - 2) * width, 2), bb(f, (nc - 2) * width, 2);
      for (std::size_t t = 0; t < 2; ++t) {
        for (std::size_t i = 2; i < nr; ++i) {
          const Vector v = affine_coefficients(w.N.entry(i, t));
          for (std::size_t k = 0; k < width; ++k) cc((i - 2) * width + k, t) = v[k];
        }
        for (std::size_t j = 2; j < nc; ++j) {
          const Vector v = affine_coefficients(w.N.entry(t, j));
          for (std::size_t k = 0; k < width; ++k) bb((j - 2) * width + k, t) = v[k];
        }
      }
      const auto kc = kernel(cc), kb = kernel(bb);
      if (!kc.empty() && !kb.empty()) {
        // rows of C are multiples of a constant w, columns of B of a constant z
        const Vector wv{-kc[0][1], kc[0][0]}, zv{-kb[0][1], kb[0][0]};
        if (!(wv[0] * zv[1] - wv[1] * zv[0]).is_zero()) contradiction("hook directions are not parallel");
        w.rows(embed(f, nr, 0, send_to_first(f, zv)), "align the columns of B with e1");
        w.cols(embed(f, nc, 0, send_to_first(f, wv).transpose()), "align the rows of C with e1");
        found = first_matching(w.N, order);
      } else if (kc.empty() && kb.empty()) {
        std::size_t i0 = 2;
        while (entry_zero(w.N, i0, 0) && entry_zero(w.N, i0, 1)) ++i0;
        const Poly a = w.N.entry(i0, 0), b = w.N.entry(i0, 1);
        // concatenated coefficient vector of a pair of affine forms
        auto pair_poly = [&](const Poly& p, const Poly& q) {
          Poly r(f, 2 * width);
          const Vector vp = affine_coefficients(p), vq = affine_coefficients(q);
          for (std::size_t k = 0; k < width; ++k) {
            Exponents e(2 * width, 0);
            e[k] = 1;
            r.add_term(e, vp[k]);
            Exponents g(2 * width, 0);
            g[width + k] = 1;
            r.add_term(g, vq[k]);
          }
          return r;
        };
        const Poly ab = pair_poly(a, b);
        auto proportional = [&](const Poly& p, const Poly& q) {
          const Poly pq = pair_poly(p, q);
          if (pq.is_zero()) return Scalar(f);
          // ratio() works on affine polynomials; the pair encoding is linear
          const auto lambda = ratio(pq, ab);
          if (!lambda) contradiction("rows of C or columns of B are not multiples of (a, b)");
          return *lambda;
        };
        Vector v, mu;
        for (std::size_t i = 2; i < nr; ++i) v.push_back(proportional(w.N.entry(i, 0), w.N.entry(i, 1)));
        for (std::size_t j = 2; j < nc; ++j) mu.push_back(proportional(w.N.entry(0, j), w.N.entry(1, j)));
        w.rows(embed(f, nr, 2, send_to_first(f, v)), "collect the rows of C in row 3");
        Vector neg_mu;
        for (const auto& s : mu) neg_mu.push_back(-s);
        w.cols(embed(f, nc, 2, send_to_first(f, neg_mu).transpose()), "collect the columns of B in column 3");

        const auto pi = w.N.entry(0, 0).is_zero() ? std::optional<Scalar>(Scalar(f)) : ratio(w.N.entry(0, 0), a);
        const auto sigma = w.N.entry(1, 1).is_zero() ? std::optional<Scalar>(Scalar(f)) : ratio(w.N.entry(1, 1), b);
        if (!pi || !sigma) contradiction("diagonal of the leading block is not a multiple of (a, b)");
        ConstMatrix rop = ConstMatrix::identity(f, nr);
        rop(0, 2) = -*pi;
        w.rows(rop, "clear entry (1,1) with row 3");
        ConstMatrix cop = ConstMatrix::identity(f, nc);
        cop(2, 1) = *sigma;
        w.cols(cop, "clear entry (2,2) with column 3");
        found = first_matching(w.N, order);
      } else {
        contradiction("C and B disagree on the type of their rank-one structure");
      }
    }
  }

  NormalFormTag tag = *found;
  if (flags.is_jacobian && tag == NormalFormTag::R2_Antisym && f.has_half()) {
    contradiction("Jacobian matrix in the antisymmetric case although 1/2 is in K");
  }
  if (flags.is_jacobian && tag == NormalFormTag::R2_Antisym) {
    flags.note = "antisymmetric Jacobian: the normal form is symmetric since 1/2 is not in K";
  }
  if (flags.is_jacobian && tag == NormalFormTag::R2_Hook) {
    flags.refinement_applied = true;
    if (refine_column(m, w, 1)) {
      tag = NormalFormTag::R2_HookHalf;
    } else {
      tag = NormalFormTag::R2_TwoRows;
      flags.note = "hook column collapses onto one row";
    }
  }
  return finish(m, w, tag, r, std::move(flags));
}

ClassificationReport classify(const DegOneMatrix& m) {
  const std::size_t r = rank_symbolic(m);
  if (r >= 3) fail(ErrorCode::OutOfScope, "rank " + std::to_string(r) + " is beyond the supported range");
  const bool jac = static_cast<bool>(is_jacobian(m));
  if (r == 0) {
    JacobianFlags flags;
    flags.is_jacobian = jac;
    Transform tf = Transform::identity(m.field(), m.rows(), m.cols());
    return ClassificationReport{NormalFormTag::Rank0, tf, m, 0, flags, {}};
  }
  return r == 1 ? classify_rank1(m, jac) : classify_rank2(m, jac);
}

TrdegReport trdeg_rank2(const QuadMap& h) {
  TrdegReport rep;
  const DegOneMatrix J = jacobian_of(h);
  rep.rank = rank_symbolic(J);
  const bool half = h.field().has_half();
  if (rep.rank > 2) {
    rep.note = "rank above 2";
    return rep;
  }
  if (rep.rank == 0) {
    if (half) {
      rep.claim = 0;
      rep.note = "H is constant";
    } else {
      rep.note = "zero Jacobian in characteristic 2";
    }
    return rep;
  }
  const auto report = classify(J);
  if (half) {
    rep.claim = rep.rank;
    switch (report.tag) {
      case NormalFormTag::R1_ColumnHalf:
        rep.note = "K[H~] = K[x1]";
        break;
      case NormalFormTag::R1_ColumnOnly:
      case NormalFormTag::R1_RowOnly:
        rep.note = "K[H~] = K[H~1]";
        break;
      case NormalFormTag::R2_TwoColumns:
        rep.note = "K[H~] in K[x1,x2]";
        break;
      case NormalFormTag::R2_TwoRows:
        rep.note = "K[H~] = K[H~1,H~2]";
        break;
      default:
        rep.note = "K[H~] = K[H~1,x1]";
        break;
    }
    rep.note += " with H~ = S H(Tx) from the classification";
    return rep;
  }
  if (rep.rank == 2 && report.tag == NormalFormTag::R2_Antisym) {
    rep.claim = 3;
    rep.note = "antisymmetric case in characteristic 2";
    return rep;
  }
  rep.note = "no theorem applies in characteristic 2 outside the antisymmetric case";
  return rep;
}

}  // namespace quadrk
