#include <random>

#include "doctest.h"
#include "quadrk/linmat.hpp"

using namespace quadrk;

namespace {

const FieldSpec Q = FieldSpec::rationals();

ConstMatrix random_matrix(FieldSpec f, std::size_t r, std::size_t c, std::mt19937_64& rng, int zero_bias = 0) {
  ConstMatrix a(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (zero_bias && rng() % zero_bias) continue;
      a(i, j) = Scalar(f, static_cast<long>(rng() % 9) - 4);
    }
  }
  return a;
}

}  // namespace

TEST_CASE("rref examples") {
  auto r = rref(ConstMatrix::identity(Q, 3));
  CHECK(r.rank == 3);
  CHECK(r.kernel.empty());
  r = rref(ConstMatrix(Q, 2, 2));
  CHECK(r.rank == 0);
  CHECK(r.kernel.size() == 2);
  r = rref(ConstMatrix::from_ints(Q, {{1, 1}, {-1, -1}}));
  CHECK(r.rank == 1);
  REQUIRE(r.kernel.size() == 1);
  CHECK(r.kernel[0][0] == -r.kernel[0][1]);
  CHECK(!r.kernel[0][0].is_zero());
}

TEST_CASE("inverse examples") {
  CHECK(invert(ConstMatrix::identity(Q, 4)).is_identity());
  CHECK(invert(ConstMatrix::from_ints(Q, {{0, -1}, {1, 0}})) == ConstMatrix::from_ints(Q, {{0, 1}, {-1, 0}}));
  CHECK(invert(ConstMatrix::from_ints(Q, {{1, -1, 0}, {0, 1, -1}, {0, 0, 1}})) ==
        ConstMatrix::from_ints(Q, {{1, 1, 1}, {0, 1, 1}, {0, 0, 1}}));
  CHECK_THROWS_AS(invert(ConstMatrix::from_ints(Q, {{1, 2}, {2, 4}})), Error);
}

TEST_CASE("nilpotent Jordan form examples") {
  auto j = nilpotent_jordan(ConstMatrix(Q, 3, 3));
  CHECK(j.P.is_identity());
  CHECK(j.block_sizes == std::vector<std::size_t>{1, 1, 1});

  j = nilpotent_jordan(ConstMatrix::from_ints(Q, {{0, 0}, {1, 0}}));
  CHECK(j.P == ConstMatrix::from_ints(Q, {{0, 1}, {1, 0}}));
  CHECK(j.jordan == ConstMatrix::from_ints(Q, {{0, 1}, {0, 0}}));

  j = nilpotent_jordan(ConstMatrix::from_ints(Q, {{0, 0, 0}, {2, 0, 0}, {1, 3, 0}}));
  CHECK(j.block_sizes == std::vector<std::size_t>{3});
  CHECK(j.jordan == ConstMatrix::from_ints(Q, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));

  CHECK_THROWS_AS(nilpotent_jordan(ConstMatrix::identity(Q, 2)), Error);
}

TEST_CASE("randomized rref, kernel and Jordan properties") {
  std::mt19937_64 rng(3);
  for (const auto& f : {Q, FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(5)}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      const ConstMatrix a = random_matrix(f, r, c, rng, 2);
      const auto res = rref(a);
      CHECK(rref(res.reduced).reduced == res.reduced);
      CHECK(res.row_ops * a == res.reduced);
      CHECK(rank(res.row_ops) == r);
      CHECK(res.rank + res.kernel.size() == c);
      for (const auto& v : res.kernel) CHECK(is_zero(a.apply(v)));

      // Nilpotent matrices as conjugates of strictly upper ones.
      const std::size_t n = 1 + rng() % 5;
      ConstMatrix s = random_matrix(f, n, n, rng, 2);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) s(i, j) = Scalar(f);
      }
      ConstMatrix U = random_matrix(f, n, n, rng);
      while (rank(U) != n) U = random_matrix(f, n, n, rng);
      const ConstMatrix N = invert(U) * s * U;
      const auto jr = nilpotent_jordan(N);
      CHECK(invert(jr.P) * N * jr.P == jr.jordan);
      CHECK(jr.jordan.is_strictly_upper());
      CHECK(std::is_sorted(jr.block_sizes.rbegin(), jr.block_sizes.rend()));
      CHECK(n - jr.block_sizes.size() == rank(N));
    }
  }
}

TEST_CASE("transforms") {
  const auto S = ConstMatrix::from_ints(Q, {{1, 2}, {0, 1}});
  const Transform tf(S, ConstMatrix::identity(Q, 3));
  CHECK(tf.S() * tf.S_inv() == ConstMatrix::identity(Q, 2));
  CHECK_THROWS_AS(Transform(S, S, ConstMatrix::identity(Q, 1), ConstMatrix::identity(Q, 1)), Error);
  const auto U = ConstMatrix::from_ints(Q, {{2, 1}, {1, 1}});
  const auto sim = Transform::similarity(U);
  CHECK(sim.S() == invert(U));
  CHECK(sim.T() == U);
  const auto both = tf.then_rows(U);
  CHECK(both.S() == U * S);
  CHECK(both.S_inv() == invert(U * S));
}
