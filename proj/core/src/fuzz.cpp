#include "quadrk/fuzz.hpp"

#include <functional>

#include "quadrk/text.hpp"

namespace quadrk::fuzz {

namespace {

constexpr int kMaxAttempts = 10000;

[[noreturn]] void invalid(const std::string& what) { fail(ErrorCode::InvalidSpec, what); }

DegOneMatrix from_entries(FieldSpec f, std::size_t m, std::size_t n, std::size_t nvars,
                          const std::function<Poly(std::size_t, std::size_t)>& entry) {
  PolyMatrix p(f, m, n, nvars);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) p(i, j) = entry(i, j);
  }
  return DegOneMatrix::from_poly_matrix(p);
}

Poly monomial(FieldSpec f, std::size_t nvars, std::initializer_list<std::size_t> vars, const Scalar& c) {
  Exponents e(nvars, 0);
  for (std::size_t v : vars) ++e[v];
  Poly p(f, nvars);
  p.add_term(e, c);
  return p;
}

Scalar nonzero_scalar(FieldSpec f, Rng& rng) {
  for (;;) {
    Scalar s = random_scalar(f, rng);
    if (!s.is_zero()) return s;
  }
}

// a x1^2 + b x1
Poly x1_quadratic(FieldSpec f, std::size_t nvars, const Scalar& a, const Scalar& b) {
  return monomial(f, nvars, {0, 0}, a) + monomial(f, nvars, {0}, b);
}

}  // namespace

Scalar random_scalar(FieldSpec f, Rng& rng, long spread) {
  return Scalar(f, static_cast<long>(rng() % static_cast<std::uint64_t>(2 * spread + 1)) - spread);
}

ConstMatrix random_gl(FieldSpec f, std::size_t n, Rng& rng) {
  for (int t = 0; t < kMaxAttempts; ++t) {
    ConstMatrix a(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = random_scalar(f, rng);
    }
    if (rank(a) == n) return a;
  }
  throw InternalContradiction("could not sample an invertible matrix");
}

Poly random_affine(FieldSpec f, std::size_t nvars, Rng& rng, unsigned zero_odds) {
  if (zero_odds && rng() % zero_odds == 0) return Poly(f, nvars);
  std::vector<Scalar> lin;
  for (std::size_t i = 0; i < nvars; ++i) lin.push_back(rng() % 2 ? random_scalar(f, rng) : Scalar(f));
  return Poly::affine(lin, rng() % 2 ? random_scalar(f, rng) : Scalar(f));
}

Poly random_quadratic(FieldSpec f, std::size_t nvars, std::size_t used, Rng& rng, bool homogeneous) {
  Poly p(f, nvars);
  if (used == 0) return homogeneous ? p : Poly::constant(random_scalar(f, rng), nvars);
  const int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    const std::size_t deg = homogeneous ? 2 : rng() % 3;
    Exponents e(nvars, 0);
    for (std::size_t d = 0; d < deg; ++d) ++e[rng() % used];
    p.add_term(e, random_scalar(f, rng));
  }
  return p;
}

DegOneMatrix random_normal_form(FieldSpec f, NormalFormTag tag, std::size_t m, std::size_t n, std::size_t nvars,
                                Rng& rng) {
  const bool needs_jacobian = tag == NormalFormTag::R1_ColumnHalf || tag == NormalFormTag::R2_HookHalf;
  if (needs_jacobian) {
    if (!f.has_half()) invalid(std::string(to_string(tag)) + " needs a field containing 1/2");
    if (n != nvars) invalid(std::string(to_string(tag)) + " needs n = nvars");
  }
  std::size_t min_m = tag_rank(tag), min_n = tag_rank(tag);
  if (tag == NormalFormTag::R1_ColumnHalf) min_m = 2;
  if (tag == NormalFormTag::R2_HookHalf) min_m = 3;
  if (tag == NormalFormTag::R2_Antisym) min_m = min_n = 3;
  if (m < min_m || n < min_n) invalid("matrix too small for " + std::string(to_string(tag)));
  if (tag == NormalFormTag::R2_Antisym && nvars < 2) invalid("R2_Antisym needs at least 2 variables");
  if (tag == NormalFormTag::R2_HookHalf && nvars < 2) invalid("R2_HookHalf needs at least 2 variables");

  const Poly zero(f, nvars);
  const Scalar half = f.has_half() ? Scalar::half(f) : Scalar(f);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    DegOneMatrix F(f, m, n, nvars);
    switch (tag) {
      case NormalFormTag::Rank0:
        return F;
      case NormalFormTag::R1_ColumnOnly:
        F = from_entries(f, m, n, nvars, [&](std::size_t, std::size_t j) { return j == 0 ? random_affine(f, nvars, rng, 3) : zero; });
        break;
      case NormalFormTag::R1_RowOnly:
        F = from_entries(f, m, n, nvars, [&](std::size_t i, std::size_t) { return i == 0 ? random_affine(f, nvars, rng, 3) : zero; });
        break;
      case NormalFormTag::R2_TwoColumns:
        F = from_entries(f, m, n, nvars, [&](std::size_t, std::size_t j) { return j < 2 ? random_affine(f, nvars, rng, 3) : zero; });
        break;
      case NormalFormTag::R2_TwoRows:
        F = from_entries(f, m, n, nvars, [&](std::size_t i, std::size_t) { return i < 2 ? random_affine(f, nvars, rng, 3) : zero; });
        break;
      case NormalFormTag::R2_Hook:
        F = from_entries(f, m, n, nvars,
                         [&](std::size_t i, std::size_t j) { return i == 0 || j == 0 ? random_affine(f, nvars, rng, 3) : zero; });
        break;
      case NormalFormTag::R2_Antisym: {
        const Poly a = random_affine(f, nvars, rng), b = random_affine(f, nvars, rng), c = random_affine(f, nvars, rng);
        F = from_entries(f, m, n, nvars, [&](std::size_t i, std::size_t j) {
          if (i == 1 && j == 0) return a;
          if (i == 2 && j == 0) return b;
          if (i == 2 && j == 1) return c;
          if (i == 0 && j == 1) return -a;
          if (i == 0 && j == 2) return -b;
          if (i == 1 && j == 2) return -c;
          return zero;
        });
        break;
      }
      case NormalFormTag::R1_ColumnHalf: {
        std::vector<Poly> h(m, zero);
        h[0] = x1_quadratic(f, nvars, random_scalar(f, rng), random_scalar(f, rng));
        h[1] = x1_quadratic(f, nvars, Scalar(f), half);
        F = jacobian_of(QuadMap(f, nvars, h));
        break;
      }
      case NormalFormTag::R2_HookHalf: {
        std::vector<Poly> h(m, zero);
        h[0] = random_quadratic(f, nvars, nvars, rng);
        h[1] = x1_quadratic(f, nvars, Scalar::one(f), Scalar(f));
        h[2] = x1_quadratic(f, nvars, Scalar(f), half);
        F = jacobian_of(QuadMap(f, nvars, h));
        break;
      }
    }
    if (shape_predicate(F, tag) && rank_symbolic(F) == tag_rank(tag)) return F;
  }
  throw InternalContradiction("could not sample a " + std::string(to_string(tag)) + " instance");
}

DegOneMatrix scramble(const DegOneMatrix& F, Rng& rng) {
  const FieldSpec f = F.field();
  const ConstMatrix S0 = random_gl(f, F.rows(), rng);
  const ConstMatrix T0 = random_gl(f, F.cols(), rng);
  const ConstMatrix A = F.cols() == F.nvars() ? T0 : random_gl(f, F.nvars(), rng);
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < F.nvars(); ++i) c.push_back(rng() % 2 ? random_scalar(f, rng) : Scalar(f));
  return substitute_affine(F, A, c).sandwich(S0, T0);
}

QuadMap conjugate_map(const QuadMap& h, Rng& rng, bool shift) {
  const FieldSpec f = h.field();
  const std::size_t n = h.nvars();
  if (h.size() != n) fail(ErrorCode::DimensionMismatch, "conjugation needs a square map");
  std::vector<Scalar> c(n, Scalar(f));
  if (shift) {
    for (auto& s : c) s = random_scalar(f, rng);
  }
  std::vector<Poly> shifted;
  for (const auto& p : h.components()) shifted.push_back(p.substitute_affine(ConstMatrix::identity(f, n), c));
  const ConstMatrix U0 = random_gl(f, n, rng);
  return compose_linear(QuadMap(f, n, shifted), Transform::similarity(U0));
}

QuadMap random_strict_triangular(FieldSpec f, std::size_t n, TriangularFamily family, Rng& rng) {
  if (n < 2) invalid("triangular families need n >= 2");
  std::vector<Poly> h(n, Poly(f, n));
  switch (family) {
    case TriangularFamily::ExampleB:
      if (n >= 4) {
        h[1] = monomial(f, n, {0}, nonzero_scalar(f, rng));
        h[2] = monomial(f, n, {0, 0}, nonzero_scalar(f, rng));
        h[3] = monomial(f, n, {0, 1}, nonzero_scalar(f, rng)) + monomial(f, n, {2}, nonzero_scalar(f, rng));
        break;
      }
      [[fallthrough]];
    case TriangularFamily::Columns:
      h[1] = random_quadratic(f, n, 1, rng);
      for (std::size_t i = 2; i < n; ++i) h[i] = random_quadratic(f, n, 2, rng);
      break;
    case TriangularFamily::Rows:
      h[n - 2] = random_quadratic(f, n, n - 2, rng);
      h[n - 1] = random_quadratic(f, n, n - 1, rng);
      break;
    case TriangularFamily::Hook:
      for (std::size_t i = 1; i + 1 < n; ++i) h[i] = x1_quadratic(f, n, random_scalar(f, rng), random_scalar(f, rng));
      h[n - 1] = random_quadratic(f, n, n - 1, rng);
      break;
  }
  QuadMap out(f, n, h);
  if (!jacobian_of(out).is_strictly_lower()) throw InternalContradiction("triangular family is not triangular");
  return out;
}

QuadMap random_square_zero(FieldSpec f, std::size_t n, Rng& rng, bool homogeneous) {
  if (n < 2) invalid("square-zero family needs n >= 2");
  const std::size_t k = 1 + rng() % (n - 1);
  std::vector<Poly> h(n, Poly(f, n));
  for (std::size_t i = k; i < n; ++i) h[i] = random_quadratic(f, n, k, rng, homogeneous);
  return conjugate_map(QuadMap(f, n, h), rng, !homogeneous);
}

QuadMap random_low_rank_map(FieldSpec f, std::size_t m, std::size_t n, Rng& rng) {
  if (m < 1 || n < 2) invalid("low-rank family needs m >= 1 and n >= 2");
  std::vector<Poly> h(m, Poly(f, n));
  switch (rng() % 4) {
    case 0:
      for (auto& p : h) p = x1_quadratic(f, n, random_scalar(f, rng), random_scalar(f, rng));
      break;
    case 1:
      for (auto& p : h) p = random_quadratic(f, n, 2, rng);
      break;
    case 2:
      for (std::size_t i = 0; i < m && i < 2; ++i) h[i] = random_quadratic(f, n, n, rng);
      break;
    default:
      h[0] = random_quadratic(f, n, n, rng);
      for (std::size_t i = 1; i < m; ++i) h[i] = x1_quadratic(f, n, random_scalar(f, rng), random_scalar(f, rng));
      break;
  }
  return compose_linear(QuadMap(f, n, h), Transform(random_gl(f, m, rng), random_gl(f, n, rng)));
}

QuadMap example_a(FieldSpec f) { return QuadMap::parse(f, 3, {"x2*x3", "x3*x1", "x1*x2"}); }

QuadMap example_b() { return QuadMap::parse(FieldSpec::rationals(), 4, {"0", "x1", "x1^2", "x1*x2 - 1/2*x3"}); }

QuadMap example_c() {
  return QuadMap::parse(FieldSpec::prime(2), 7,
                        {"0", "0", "0", "x2*x3", "x3*x1", "x1*x2", "x1*x4 + x2*x5 + x3*x6"});
}

DegOneMatrix nconj_matrix(FieldSpec field, const Poly& f, const Poly& b) {
  const std::size_t nv = f.nvars();
  const Poly one = Poly::constant(Scalar::one(field), nv);
  PolyMatrix p(field, 3, 3, nv);
  p(0, 1) = f + one;
  p(1, 0) = b;
  p(1, 2) = f + one;
  p(2, 1) = -b;
  return DegOneMatrix::from_poly_matrix(p);
}

Instance generate(const Spec& spec) {
  Rng rng(spec.seed);
  if (spec.family == "srk2nmain") {
    const auto family = static_cast<TriangularFamily>(rng() % 4);
    const QuadMap h = conjugate_map(random_strict_triangular(spec.field, spec.n, family, rng), rng);
    return {h, "nilpotent Jacobian of rank <= 2; triangularize succeeds"};
  }
  if (spec.family == "jh2") {
    const bool homogeneous = rng() % 2;
    return {random_square_zero(spec.field, spec.n, rng, homogeneous),
            homogeneous ? "(JH)^2 = 0, quadratic homogeneous" : "(JH)^2 = 0"};
  }
  const auto tag = parse_tag(spec.family);
  if (!tag) invalid("unknown fuzz family '" + spec.family + "'");
  const DegOneMatrix F = random_normal_form(spec.field, *tag, spec.m, spec.n, spec.nvars, rng);
  return {scramble(F, rng), "rank " + std::to_string(tag_rank(*tag)) + "; source shape " + spec.family};
}

}  // namespace quadrk::fuzz
