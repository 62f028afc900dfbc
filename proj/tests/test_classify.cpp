#include "doctest.h"
#include "quadrk/classify.hpp"
#include "quadrk/fuzz.hpp"
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

void check_sound(const DegOneMatrix& m, const ClassificationReport& r) {
  CHECK(apply_transform(m, r.tf) == r.normal_form);
  CHECK(shape_predicate(r.normal_form, r.tag));
  CHECK(rank_symbolic(r.normal_form) == rank_symbolic(m));
  CHECK(tag_rank(r.tag) == r.rank);
}

}  // namespace

TEST_CASE("shape predicates") {
  CHECK(shape_predicate(DegOneMatrix(Q, 2, 3, 1), NormalFormTag::Rank0));
  CHECK(shape_predicate(antisym(F2), NormalFormTag::R2_Antisym));
  CHECK_FALSE(shape_predicate(antisym(F3), NormalFormTag::R2_Antisym));  // symmetric, not antisymmetric
  const auto bad = DegOneMatrix::parse(Q, 1, {{"1", "0", "0"}, {"x1", "0", "0"}, {"0", "1", "0"}});
  CHECK_FALSE(shape_predicate(bad, NormalFormTag::R2_TwoRows));
  CHECK(shape_predicate(bad, NormalFormTag::R2_TwoColumns));
  const auto half = DegOneMatrix::parse(Q, 1, {{"2*x1", "0"}, {"1/2", "0"}});
  CHECK(shape_predicate(half, NormalFormTag::R1_ColumnHalf));
  CHECK_FALSE(shape_predicate(DegOneMatrix::parse(Q, 1, {{"2*x1", "0"}, {"1", "0"}}), NormalFormTag::R1_ColumnHalf));
  // dependent below-diagonal entries
  const auto dep = DegOneMatrix::parse(Q, 2, {{"0", "-x1", "-x2"}, {"x1", "0", "-x1-x2"}, {"x2", "x1+x2", "0"}});
  CHECK_FALSE(shape_predicate(dep, NormalFormTag::R2_Antisym));
  for (const char* name : {"Rank0", "R1_ColumnOnly", "R2_HookHalf", "R2_Antisym"}) {
    CHECK(to_string(*parse_tag(name)) == name);
  }
  CHECK_FALSE(parse_tag("R3"));
}

TEST_CASE("classification examples") {
  const auto r0 = classify(DegOneMatrix(Q, 2, 2, 1));
  CHECK(r0.tag == NormalFormTag::Rank0);

  const auto a = classify(antisym(F2));
  CHECK(a.tag == NormalFormTag::R2_Antisym);
  CHECK(a.jacobian.is_jacobian);
  check_sound(antisym(F2), a);

  CHECK_THROWS_AS(classify(antisym(Q)), Error);
  try {
    classify(antisym(Q));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfScope);
  }

  const auto single = DegOneMatrix::parse(Q, 2, {{"x1", "0"}, {"0", "0"}});
  const auto s = classify_rank1(single, false);
  CHECK(s.tag == NormalFormTag::R1_ColumnOnly);
  check_sound(single, s);

  const auto row = DegOneMatrix::parse(Q, 2, {{"x1", "x2", "1"}, {"0", "0", "0"}});
  const auto rr = classify_rank1(row, false);
  CHECK(rr.tag == NormalFormTag::R1_RowOnly);
  check_sound(row, rr);

  // H = (x1^2, x1^2 + x1) in two variables
  const auto Jh = jacobian_of(QuadMap::parse(Q, 2, {"x1^2", "x1^2 + x1"}));
  const auto ch = classify(Jh);
  CHECK(ch.tag == NormalFormTag::R1_ColumnHalf);
  CHECK(ch.jacobian.refinement_applied);
  check_sound(Jh, ch);

  const auto rows = DegOneMatrix::parse(Q, 2, {{"x1", "1", "x2"}, {"0", "x2", "1"}, {"0", "0", "0"}});
  const auto tr = classify_rank2(rows, false);
  CHECK(tr.tag == NormalFormTag::R2_TwoRows);
  check_sound(rows, tr);

  const auto Jb = jacobian_of(fuzz::example_b());
  const auto b = classify(Jb);
  CHECK(b.rank == 2);
  CHECK(b.tag == NormalFormTag::R2_HookHalf);
  check_sound(Jb, b);

  CHECK_THROWS_AS(classify_rank1(antisym(F2), false), Error);
  CHECK_THROWS_AS(classify_rank2(single, false), Error);
}

TEST_CASE("hard rank-2 paths") {
  // rank of the constant part is 1 and the x1 coefficient matrix has rank 1
  const auto m1 = DegOneMatrix::parse(F2, 2, {{"0", "x1"}, {"1", "0"}});
  check_sound(m1, classify(m1));
  // zero constant part
  const auto m2 = DegOneMatrix::parse(F2, 2, {{"x1", "0"}, {"0", "x2"}});
  check_sound(m2, classify(m2));
  const auto m3 = DegOneMatrix::parse(F2, 1, {{"x1", "0"}, {"0", "x1+1"}});
  check_sound(m3, classify(m3));
}

TEST_CASE("scrambled normal forms round-trip") {
  fuzz::Rng rng(17);
  for (const auto& f : {Q, F2, F3, F5}) {
    for (int t = 0; t < 60; ++t) {
      for (const char* name : {"Rank0", "R1_ColumnOnly", "R1_RowOnly", "R1_ColumnHalf", "R2_TwoColumns", "R2_TwoRows",
                               "R2_Hook", "R2_HookHalf", "R2_Antisym"}) {
        const auto tag = *parse_tag(name);
        if (!f.has_half() && (tag == NormalFormTag::R1_ColumnHalf || tag == NormalFormTag::R2_HookHalf)) continue;
        const std::size_t m = 3 + rng() % 2, n = 3 + rng() % 2;
        const bool jac = tag == NormalFormTag::R1_ColumnHalf || tag == NormalFormTag::R2_HookHalf;
        const std::size_t nv = jac ? n : 2 + rng() % 2;
        const auto F = fuzz::random_normal_form(f, tag, m, n, nv, rng);
        const auto M = fuzz::scramble(F, rng);
        INFO(name, " over ", f.to_string(), "\n", M.to_string());
        const auto r = classify(M);
        check_sound(M, r);
        CHECK(r.rank == tag_rank(tag));
        if (jac) CHECK((r.tag != NormalFormTag::R2_Hook && r.tag != NormalFormTag::R1_ColumnOnly));
        if (tag == NormalFormTag::Rank0) CHECK(r.tag == tag);
      }
    }
  }
}

TEST_CASE("shift stability") {
  fuzz::Rng rng(23);
  for (int t = 0; t < 40; ++t) {
    const auto f = t % 2 ? F3 : Q;
    const auto M = fuzz::scramble(fuzz::random_normal_form(f, NormalFormTag::R2_Hook, 3, 3, 2, rng), rng);
    std::vector<Scalar> c{fuzz::random_scalar(f, rng), fuzz::random_scalar(f, rng)};
    const auto r = classify(shift_vars(M, c));
    NormalFormTag base = r.tag;
    if (base == NormalFormTag::R2_HookHalf) base = NormalFormTag::R2_Hook;
    CHECK(shape_predicate(apply_transform(M, r.tf), base));
  }
}

TEST_CASE("trdeg claims") {
  const auto a = trdeg_rank2(fuzz::example_a(F2));
  CHECK(a.rank == 2);
  CHECK(a.claim == std::optional<std::size_t>(3));
  const auto one = trdeg_rank2(QuadMap::parse(Q, 2, {"x1", "x1^2"}));
  CHECK(one.rank == 1);
  CHECK(one.claim == std::optional<std::size_t>(1));
  const auto c = trdeg_rank2(QuadMap::parse(Q, 2, {"3", "1"}));
  CHECK(c.rank == 0);
  CHECK(c.claim == std::optional<std::size_t>(0));
  CHECK_FALSE(trdeg_rank2(QuadMap::parse(F2, 1, {"x1^2"})).claim);
}
