#include <random>

#include "doctest.h"
#include "quadrk/jacobian.hpp"
#include "quadrk/text.hpp"

using namespace quadrk;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec F5 = FieldSpec::prime(5);

DegOneMatrix antisym(FieldSpec f) {
  return DegOneMatrix::parse(f, 3, {{"0", "x3", "x2"}, {"x3", "0", "x1"}, {"x2", "x1", "0"}});
}

QuadMap random_quad_map(FieldSpec f, std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < m; ++i) {
    Poly p(f, n);
    for (int t = 0; t < 4; ++t) {
      Exponents e(n, 0);
      const int deg = static_cast<int>(rng() % 3);
      for (int d = 0; d < deg; ++d) ++e[rng() % n];
      p.add_term(e, Scalar(f, static_cast<long>(rng() % 7) - 3));
    }
    comps.push_back(p);
  }
  return QuadMap(f, n, comps);
}

ConstMatrix random_gl(FieldSpec f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    ConstMatrix a(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = Scalar(f, static_cast<long>(rng() % 7) - 3);
    }
    if (rank(a) == n) return a;
  }
}

}  // namespace

TEST_CASE("jacobian_of examples") {
  CHECK(jacobian_of(QuadMap::parse(F2, 3, {"x2*x3", "x3*x1", "x1*x2"})) == antisym(F2));
  const auto J = jacobian_of(QuadMap::parse(Q, 4, {"0", "x1", "x1^2", "x1*x2 - 1/2*x3"}));
  CHECK(J == DegOneMatrix::parse(Q, 4, {{"0", "0", "0", "0"},
                                        {"1", "0", "0", "0"},
                                        {"2*x1", "0", "0", "0"},
                                        {"x2", "x1", "-1/2", "0"}}));
  CHECK(jacobian_of(QuadMap::parse(Q, 2, {"x1 + 3*x2", "2*x2"})).is_constant());
  CHECK_THROWS_AS(QuadMap::parse(Q, 1, {"x1^3"}), Error);
}

TEST_CASE("is_jacobian examples") {
  const auto w = is_jacobian(antisym(F2));
  REQUIRE(w);
  CHECK(*w.map == QuadMap::parse(F2, 3, {"x2*x3", "x1*x3", "x1*x2"}));

  const auto bad = is_jacobian(DegOneMatrix::parse(F2, 2, {{"x1", "0"}, {"0", "0"}}));
  CHECK_FALSE(bad);
  CHECK(bad.i == 0);
  CHECK(bad.j == 0);
  CHECK(bad.k == 0);

  const auto lin = is_jacobian(DegOneMatrix::parse(Q, 2, {{"1", "2"}, {"3", "4"}}));
  REQUIRE(lin);
  CHECK(*lin.map == QuadMap::parse(Q, 2, {"x1 + 2*x2", "3*x1 + 4*x2"}));

  CHECK_FALSE(is_jacobian(DegOneMatrix::parse(Q, 2, {{"x2", "0"}, {"0", "0"}})));
  CHECK(is_jacobian(DegOneMatrix::parse(Q, 1, {{"x1"}})));
}

TEST_CASE("hessian integration examples") {
  const auto h = hessian_integrate(antisym(F2));
  REQUIRE(h);
  CHECK(*h.h == parse_poly("x1*x2*x3", F2, 3));
  const auto z = hessian_integrate(DegOneMatrix(Q, 2, 2, 2));
  REQUIRE(z);
  CHECK(z.h->is_zero());
  const auto s = hessian_integrate(DegOneMatrix::parse(Q, 2, {{"2", "0"}, {"0", "2"}}));
  REQUIRE(s);
  CHECK(*s.h == parse_poly("x1^2 + x2^2", Q, 2));
  // x1^3 / 3 has no counterpart in characteristic 3
  CHECK_FALSE(hessian_integrate(DegOneMatrix::parse(F3, 1, {{"x1"}})));
  CHECK(hessian_integrate(DegOneMatrix::parse(F5, 1, {{"x1"}})));
  CHECK_FALSE(hessian_integrate(DegOneMatrix::parse(Q, 2, {{"0", "1"}, {"0", "0"}})));
}

TEST_CASE("compose_linear") {
  const auto H = QuadMap::parse(Q, 4, {"0", "x1", "x1^2", "x1*x2 - 1/2*x3"});
  CHECK(compose_linear(H, Transform::identity(Q, 4, 4)) == H);
  const auto P = ConstMatrix::permutation(Q, std::vector<std::size_t>{1, 0, 3, 2});
  const auto Hp = compose_linear(H, Transform(P, ConstMatrix::identity(Q, 4)));
  CHECK(Hp[1] == H[0]);
  CHECK(Hp[0] == H[1]);
  CHECK(Hp[3] == H[2]);
}

TEST_CASE("chain rule on random maps") {
  std::mt19937_64 rng(21);
  for (const auto& f : {F3, Q}) {
    for (int t = 0; t < 30; ++t) {
      const auto H = random_quad_map(f, 4, 4, rng);
      const Transform tf(random_gl(f, 4, rng), random_gl(f, 4, rng));
      const auto lhs = jacobian_of(compose_linear(H, tf));
      const std::vector<Scalar> zero(4, Scalar(f));
      const auto rhs = substitute_affine(apply_transform(jacobian_of(H), tf), tf.T(), zero);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("round trip through is_jacobian") {
  std::mt19937_64 rng(4);
  for (const auto& f : {Q, F2, F3, F5}) {
    for (int t = 0; t < 40; ++t) {
      const auto H = random_quad_map(f, 3, 3, rng);
      const auto J = jacobian_of(H);
      const auto w = is_jacobian(J);
      REQUIRE(w);
      CHECK(jacobian_of(*w.map) == J);
      if (f.has_half()) CHECK(*w.map == H.without_constant());
    }
  }
}

TEST_CASE("antisymmetric Jacobians have no quadratic part when 1/2 exists") {
  std::mt19937_64 rng(8);
  for (const auto& f : {Q, F3, F5}) {
    for (int t = 0; t < 30; ++t) {
      // coefficient tensor antisymmetric in (i, j) and symmetric in (j, k)
      const std::size_t n = 3;
      std::vector<ConstMatrix> cs(n, ConstMatrix(f, n, n));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) {
            cs[k](i, j) = Scalar(f, static_cast<long>(rng() % 5) - 2);
          }
        }
      }
      DegOneMatrix M(ConstMatrix(f, n, n), cs);
      M = DegOneMatrix(ConstMatrix(f, n, n), [&] {
        std::vector<ConstMatrix> a;
        for (std::size_t k = 0; k < n; ++k) a.push_back(cs[k] - cs[k].transpose());
        return a;
      }());
      const auto w = is_jacobian(M);
      if (w) CHECK(w.map->quadratic_part() == QuadMap(f, n, std::vector<Poly>(n, Poly(f, n))));
    }
  }
}

TEST_CASE("annihilator search") {
  const auto H = QuadMap::parse(Q, 2, {"x1", "x1^2"});
  const std::vector<std::size_t> both{0, 1};
  const auto a = annihilator_search(H, both, 2);
  REQUIRE(a);
  CHECK(*a.relation == parse_poly("x2 - x1^2", Q, 2));

  const auto A = QuadMap::parse(F2, 3, {"x2*x3", "x3*x1", "x1*x2"});
  const std::vector<std::size_t> all{0, 1, 2};
  const auto none = annihilator_search(A, all, 4);
  CHECK_FALSE(none);
  CHECK(none.searched_degree == 4);

  const auto B = QuadMap::parse(Q, 3, {"x1^2 + x2", "x1*x2", "x2^2 - x1"});
  const auto rel = annihilator_search(B, all, 4);
  REQUIRE(rel);
  CHECK(evaluate_relation(*rel.relation, B, all).is_zero());
}
