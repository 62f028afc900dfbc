#include "doctest.h"
#include "quadrk/certificate.hpp"
#include "quadrk/fuzz.hpp"
#include "quadrk/io.hpp"

using namespace quadrk;

namespace {

ErrorCode verify_code(const Certificate& c, std::string_view input) {
  try {
    verify_certificate(c, input);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalContradiction;
}

Certificate reread(const Certificate& c) { return read_certificate(write_certificate(c)); }

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("classification certificate") {
  const std::string input = "field GF(2)\nvars 3\nmatrix 3 3\n0, x3, x2\nx3, 0, x1\nx2, x1, 0\n";
  const auto rep = classify(parse_matrix_text(input));
  const auto cert = reread(classification_certificate(input, rep));
  CHECK(*cert.claim("tag") == "R2_Antisym");
  const auto v = verify_certificate(cert, input);
  CHECK(v.verified);
  CHECK(v.checks.size() >= 5);
  CHECK(write_certificate(cert) == write_certificate(classification_certificate(input, rep)));

  CHECK(verify_code(cert, input + "\n") == ErrorCode::HashMismatch);

  // tampering with one scalar of S
  Certificate bad = cert;
  for (auto& [name, m] : bad.matrices) {
    if (name == "S") m(0, 0) = m(0, 0) + Scalar::one(m.field());
  }
  CHECK(verify_code(bad, input) == ErrorCode::ClaimFailed);

  Certificate wrong_tag = cert;
  wrong_tag.claims[0].second = "R2_TwoRows";
  CHECK(verify_code(wrong_tag, input) == ErrorCode::ClaimFailed);

  Certificate no_nf = cert;
  no_nf.normal_form.reset();
  CHECK(verify_code(no_nf, input) == ErrorCode::ClaimFailed);
}

TEST_CASE("triangularization and strong nilpotence certificates") {
  fuzz::Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const auto f = t % 2 ? FieldSpec::prime(3) : FieldSpec::rationals();
    const auto h = fuzz::conjugate_map(
        fuzz::random_strict_triangular(f, 4, static_cast<fuzz::TriangularFamily>(t % 4), rng), rng, true);
    const std::string input = format_map(h);
    const auto cert = reread(triangularization_certificate(input, f, triangularize_rank_le2(h)));
    CHECK(verify_certificate(cert, input).verified);
    Certificate bad = cert;
    bad.matrices[0].second(3, 0) = bad.matrices[0].second(3, 0) + Scalar::one(f);
    CHECK(verify_code(bad, input) == ErrorCode::ClaimFailed);
  }

  const auto nc = fuzz::nconj_matrix(FieldSpec::rationals(), Poly::variable(FieldSpec::rationals(), 2, 0),
                                     Poly::variable(FieldSpec::rationals(), 2, 1));
  const std::string input = format_matrix(nc);
  const auto sn = strongly_nilpotent_triangularize(nc);
  const auto cert = reread(strong_nilpotence_certificate(input, nc.field(), sn));
  CHECK(*cert.claim("triangularizable") == "false");
  CHECK(verify_certificate(cert, input).verified);

  const auto lower = DegOneMatrix::parse(FieldSpec::rationals(), 1, {{"0", "0"}, {"x1 + 2", "0"}});
  const std::string li = format_matrix(lower);
  const auto good = strong_nilpotence_certificate(li, lower.field(), strongly_nilpotent_triangularize(lower));
  CHECK(verify_certificate(reread(good), li).verified);
  Certificate lie = good;
  lie.claims = {{"triangularizable", "false"}};
  lie.matrices.clear();
  CHECK(verify_code(lie, li) == ErrorCode::ClaimFailed);
}

TEST_CASE("jh2 certificates") {
  for (const auto& h : {fuzz::example_b(), fuzz::example_c()}) {
    const std::string input = format_map(h);
    const auto cert = reread(jh2_certificate(input, h.field(), jh2_suite(h)));
    CHECK(verify_certificate(cert, input).verified);
    Certificate bad = cert;
    bad.claims[2].second = bad.claims[2].second == "NA" ? "true" : "NA";
    CHECK(verify_code(bad, input) == ErrorCode::ClaimFailed);
  }
}

TEST_CASE("certificate syntax") {
  CHECK_THROWS_AS(read_certificate("kind classification\n"), SourceError);
  CHECK_THROWS_AS(read_certificate("kind x\ninput-sha256 00\nfield Q\nmatrix S 2 2\n1, 0\n"), SourceError);
  CHECK_THROWS_AS(read_certificate("kind x\ninput-sha256 00\nfield Q\nbogus 1\n"), SourceError);
  CHECK_THROWS_AS(read_certificate("kind x\ninput-sha256 00\nfield Q\nmatrix S 1 1\n1/0\n"), SourceError);
  const auto c = read_certificate("kind x\ninput-sha256 00\nfield GF(5)\nnote hello world\nclaim a b\n");
  CHECK(c.notes.at(0) == "hello world");
  CHECK(*c.claim("a") == "b");
  CHECK(verify_code(c, "field GF(5)\nvars 1\nmatrix 1 1\nx1\n") == ErrorCode::HashMismatch);
}
