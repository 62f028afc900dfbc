#ifndef QUADRK_FUZZ_HPP
#define QUADRK_FUZZ_HPP

#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "quadrk/jacobian.hpp"
#include "quadrk/shape.hpp"

namespace quadrk::fuzz {

using Rng = std::mt19937_64;

Scalar random_scalar(FieldSpec f, Rng& rng, long spread = 3);
/// Uniform-ish element of GL_n(K) with small entries.
ConstMatrix random_gl(FieldSpec f, std::size_t n, Rng& rng);
/// Random affine polynomial; zero with probability about 1/zero_odds.
Poly random_affine(FieldSpec f, std::size_t nvars, Rng& rng, unsigned zero_odds = 0);
/// Random polynomial of degree <= 2 in the variables [0, used).
Poly random_quadratic(FieldSpec f, std::size_t nvars, std::size_t used, Rng& rng, bool homogeneous = false);

/// A matrix satisfying shape_predicate(tag) with rank tag_rank(tag), random
/// entries. Half tags and the Jacobian antisymmetric case are built as
/// Jacobian matrices (then n = nvars).
DegOneMatrix random_normal_form(FieldSpec f, NormalFormTag tag, std::size_t m, std::size_t n, std::size_t nvars,
                                Rng& rng);

/// S0 F T0 followed by a random affine substitution. When F is a Jacobian
/// matrix with n = nvars the result is again a Jacobian matrix.
DegOneMatrix scramble(const DegOneMatrix& F, Rng& rng);

/// U0^{-1} H(U0 x + c) for random U0, c.
QuadMap conjugate_map(const QuadMap& h, Rng& rng, bool shift = true);

enum class TriangularFamily { Columns, Rows, Hook, ExampleB };
/// Strictly lower triangular Jacobian of rank <= 2 in n >= 2 variables.
QuadMap random_strict_triangular(FieldSpec f, std::size_t n, TriangularFamily family, Rng& rng);

/// Map with (JH)^2 = 0 built from disjoint row and column supports.
QuadMap random_square_zero(FieldSpec f, std::size_t n, Rng& rng, bool homogeneous);

/// Quadratic map of Jacobian rank <= 2 built from the normal-form families.
QuadMap random_low_rank_map(FieldSpec f, std::size_t m, std::size_t n, Rng& rng);

QuadMap example_a(FieldSpec f);
QuadMap example_b();
QuadMap example_c();
/// The nilpotent 3x3 matrix [[0, f+1, 0], [b, 0, f+1], [0, -b, 0]].
DegOneMatrix nconj_matrix(FieldSpec field, const Poly& f, const Poly& b);

struct Spec {
  FieldSpec field = FieldSpec::rationals();
  std::size_t m = 3, n = 3, nvars = 3;
  std::string family;  // a tag name, "srk2nmain" or "jh2"
  std::uint64_t seed = 0;
};

struct Instance {
  std::variant<DegOneMatrix, QuadMap> input;
  std::string expected;  // sidecar description of what the instance should satisfy
};

/// Deterministic per seed; throws InvalidSpec.
Instance generate(const Spec& spec);

}  // namespace quadrk::fuzz

#endif  // QUADRK_FUZZ_HPP
