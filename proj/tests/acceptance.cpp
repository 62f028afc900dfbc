// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quadrk/certificate.hpp"
#include "quadrk/classify.hpp"
#include "quadrk/fuzz.hpp"
#include "quadrk/io.hpp"
#include "quadrk/text.hpp"
#include "quadrk/triangularize.hpp"

using namespace quadrk;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);
const FieldSpec F5 = FieldSpec::prime(5);
const std::vector<FieldSpec> kFields{Q, F2, F3, F5};

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

std::string label(FieldSpec f) { return f.to_string(); }

Poly var(FieldSpec f, std::size_t nv, std::size_t i) { return Poly::variable(f, nv, i); }

template <class F>
std::optional<ErrorCode> code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// M(x) M(y) computed directly from generic tuples.
PolyMatrix tuple_product(const DegOneMatrix& m, std::initializer_list<std::size_t> tuples, std::size_t total) {
  const std::size_t nv = m.nvars();
  PolyMatrix acc = PolyMatrix::identity(m.field(), m.rows(), nv * total);
  for (std::size_t t : tuples) acc = acc * evaluate(m, GenericTuple{nv, t}, total);
  return acc;
}

bool certificate_round_trip(const Certificate& c, const std::string& input) {
  const Certificate back = read_certificate(write_certificate(c));
  return verify_certificate(back, input).verified;
}

DegOneMatrix random_square(FieldSpec f, std::size_t m, std::size_t nv, fuzz::Rng& rng) {
  std::vector<ConstMatrix> coeffs;
  for (std::size_t k = 0; k <= nv; ++k) {
    ConstMatrix c(f, m, m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (rng() % 3 == 0) c(i, j) = fuzz::random_scalar(f, rng);
      }
    }
    coeffs.push_back(std::move(c));
  }
  ConstMatrix c0 = coeffs.front();
  coeffs.erase(coeffs.begin());
  return DegOneMatrix(c0, coeffs);
}

DegOneMatrix strictly_lower(const DegOneMatrix& m) {
  std::vector<ConstMatrix> all = m.all_coefficients();
  for (auto& c : all) {
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = i; j < c.cols(); ++j) c(i, j) = Scalar(m.field());
    }
  }
  ConstMatrix c0 = all.front();
  all.erase(all.begin());
  return DegOneMatrix(c0, all);
}

// Nilpotent and not strongly nilpotent: the Nconj block padded with a
// strictly lower part, then conjugated.
DegOneMatrix padded_nconj(FieldSpec f, std::size_t m, std::size_t nv, fuzz::Rng& rng) {
  Poly a = fuzz::random_affine(f, nv, rng);
  Poly b = fuzz::random_affine(f, nv, rng);
  const DegOneMatrix core = fuzz::nconj_matrix(f, a, b);
  PolyMatrix p = strictly_lower(random_square(f, m, nv, rng)).to_poly_matrix();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) p(i, j) = core.entry(i, j);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 3; j < m; ++j) p(i, j) = Poly(f, nv);
  }
  return conjugate(DegOneMatrix::from_poly_matrix(p), fuzz::random_gl(f, m, rng));
}

// 1. Example A
Outcome example_a() {
  Outcome o;
  const QuadMap h = fuzz::example_a(F2);
  const DegOneMatrix M = DegOneMatrix::parse(F2, 3, {{"0", "x3", "x2"}, {"x3", "0", "x1"}, {"x2", "x1", "0"}});
  o.require(jacobian_of(h) == M, "example A is not the Jacobian of (x2x3, x3x1, x1x2)");
  const auto r = classify(M);
  o.require(r.tag == NormalFormTag::R2_Antisym, "tag " + std::string(to_string(r.tag)));
  o.require(certificate_round_trip(classification_certificate(format_matrix(M), r), format_matrix(M)),
            "classification certificate");
  const auto w = is_jacobian(M);
  o.require(w && *w.map == QuadMap::parse(F2, 3, {"x2*x3", "x3*x1", "x1*x2"}), "is_jacobian");
  const auto hi = hessian_integrate(M);
  o.require(hi && *hi.h == parse_poly("x1*x2*x3", F2, 3), "hessian_integrate");
  o.require(rank_symbolic(M) == 2, "rank over GF(2)");
  o.require(!is_nilpotent(M), "is_nilpotent");
  const std::vector<std::size_t> all{0, 1, 2};
  const auto ann = annihilator_search(h, all, 4);
  o.require(!ann && ann.searched_degree == 4, "annihilator found below degree 5");

  const DegOneMatrix Mq = DegOneMatrix::parse(Q, 3, {{"0", "x3", "x2"}, {"x3", "0", "x1"}, {"x2", "x1", "0"}});
  o.require(rank_symbolic(Mq) == 3, "rank over Q");
  o.require(code_of([&] { classify(Mq); }) == ErrorCode::OutOfScope, "classify over Q is not OutOfScope");
  o.summary = "GF(2): R2_Antisym, rank 2, h = x1*x2*x3, NoRelationUpTo(4); Q: rank 3, OutOfScope";
  return o;
}

// 2. Example B
Outcome example_b() {
  Outcome o;
  const QuadMap h = fuzz::example_b();
  const DegOneMatrix J = jacobian_of(h);
  o.require((J.to_poly_matrix() * J.to_poly_matrix()).is_zero(), "JH^2 != 0");
  o.require(!tuple_product(J, {0, 1}, 2).is_zero(), "JH(x) JH(y) = 0");
  o.require(tuple_product(J, {0, 1, 2}, 3).is_zero(), "JH(x) JH(y) JH(z) != 0");
  const auto rep = jh2_suite(h);
  o.require(rep.square_zero && rep.triple_product_zero == std::optional<bool>(true), "jh2_suite");
  const auto t = triangularize_rank_le2(h);
  o.require(verify_triangularization(J, t.U, t.U_inv), "triangularization does not verify");
  o.require(certificate_round_trip(triangularization_certificate(format_map(h), h.field(), t), format_map(h)),
            "triangularization certificate");
  o.require(generic_product_vanishes(J, 3), "generic product of length 3 is nonzero");
  o.summary = "JH^2 = 0, pair product nonzero, triple product zero, certificate verified";
  return o;
}

// 3. Example C
Outcome example_c() {
  Outcome o;
  const QuadMap h = fuzz::example_c();
  const DegOneMatrix J = jacobian_of(h);
  o.require(h.field() == F2 && h.nvars() == 7, "example C setup");
  o.require((J.to_poly_matrix() * J.to_poly_matrix()).is_zero(), "JH^2 != 0");
  const bool pair = !tuple_product(J, {0, 1}, 3).is_zero();
  const bool triple = !tuple_product(J, {0, 1, 2}, 3).is_zero();
  o.require(triple, "symbolic triple product JH(x) JH(y) JH(z) is identically zero (column 7 of JH vanishes)");
  o.summary = std::string("JH^2 = 0; pair product ") + (pair ? "nonzero" : "zero") + ", triple product " +
              (triple ? "nonzero" : "zero");
  return o;
}

// 4. Classification fuzz
Outcome classification_fuzz() {
  Outcome o;
  fuzz::Rng rng(4004);
  std::size_t total = 0;
  std::ostringstream counts;
  for (FieldSpec f : kFields) {
    std::vector<NormalFormTag> tags;
    for (const char* name : {"Rank0", "R1_ColumnOnly", "R1_RowOnly", "R1_ColumnHalf", "R2_TwoColumns", "R2_TwoRows",
                             "R2_Hook", "R2_HookHalf", "R2_Antisym"}) {
      const NormalFormTag tag = *parse_tag(name);
      if (!f.has_half() && (tag == NormalFormTag::R1_ColumnHalf || tag == NormalFormTag::R2_HookHalf)) continue;
      tags.push_back(tag);
    }
    std::size_t done = 0;
    for (std::size_t k = 0; done < 500 || k % tags.size() != 0; ++k, ++done) {
      const NormalFormTag tag = tags[k % tags.size()];
      const bool jac = tag == NormalFormTag::R1_ColumnHalf || tag == NormalFormTag::R2_HookHalf;
      const std::size_t m = 3 + rng() % 3, n = 3 + rng() % 3;
      const std::size_t nv = jac ? n : 2 + rng() % 3;
      const DegOneMatrix M = fuzz::scramble(fuzz::random_normal_form(f, tag, m, n, nv, rng), rng);
      const std::string text = format_matrix(M);
      try {
        const auto r = classify(M);
        o.require(r.rank == tag_rank(tag), label(f) + " " + std::string(to_string(tag)) + ": rank " +
                                               std::to_string(r.rank));
        o.require(certificate_round_trip(classification_certificate(text, r), text),
                  label(f) + " " + std::string(to_string(tag)) + ": certificate");
      } catch (const Error& e) {
        o.require(false, label(f) + " " + std::string(to_string(tag)) + ": " + e.what() + "\n" + text);
      }
    }
    counts << (total ? ", " : "") << label(f) << " " << done;
    total += done;
  }
  o.summary = std::to_string(total) + " scrambled normal forms classified and verified (" + counts.str() + ")";
  return o;
}

// 5. Triangularization fuzz
Outcome triangularization_fuzz() {
  Outcome o;
  fuzz::Rng rng(5005);
  std::size_t total = 0, case_iv = 0, nconj = 0;
  for (FieldSpec f : kFields) {
    for (int t = 0; t < 300; ++t, ++total) {
      const std::size_t n = 2 + rng() % 5;
      const auto family = static_cast<fuzz::TriangularFamily>(t % 4);
      const QuadMap h = fuzz::conjugate_map(fuzz::random_strict_triangular(f, n, family, rng), rng, t % 3 != 0);
      const std::string text = format_map(h);
      try {
        const auto c = triangularize_rank_le2(h);
        for (const auto& line : c.trace) case_iv += line.find("(iv)") != std::string::npos;
        o.require(verify_triangularization(jacobian_of(h), c.U, c.U_inv), label(f) + ": unverified U\n" + text);
        o.require(certificate_round_trip(triangularization_certificate(text, f, c), text),
                  label(f) + ": certificate\n" + text);
      } catch (const InternalContradiction& e) {
        ++nconj;
        o.require(false, label(f) + ": " + e.what() + "\n" + text);
      } catch (const Error& e) {
        o.require(false, label(f) + ": " + e.what() + "\n" + text);
      }
    }
  }
  o.require(nconj == 0, "iv_nconj reached " + std::to_string(nconj) + " times");
  o.summary = std::to_string(total) + " conjugated strictly triangular Jacobians (n <= 6); case (iv) upper " +
              std::to_string(case_iv) + " times, iv_nconj " + std::to_string(nconj) + " times";
  return o;
}

// 6. Nconj negative control
Outcome negative_control() {
  Outcome o;
  const DegOneMatrix N = fuzz::nconj_matrix(Q, var(Q, 2, 0), var(Q, 2, 1));
  o.require(is_nilpotent(N), "Nconj is not nilpotent");
  o.require(is_nilpotent_by_power(N), "Nconj^3 != 0");
  const auto s = strongly_nilpotent_triangularize(N);
  o.require(!s.triangularizable(), "Nconj was triangularized");
  o.require(!generic_product_vanishes(N, 3), "generic product of length 3 vanishes");
  o.require(!is_jacobian(N), "Nconj is a Jacobian matrix");
  o.summary = "nilpotent, NotTriangularizable (stuck block " + std::to_string(s.stuck_block_size) +
              "), generic triple product nonzero";
  return o;
}

// 7. Minor criterion vs power criterion
Outcome eigen_equivalence() {
  Outcome o;
  fuzz::Rng rng(7007);
  std::size_t total = 0, nilpotent = 0;
  for (FieldSpec f : kFields) {
    for (int t = 0; t < 250; ++t, ++total) {
      const std::size_t m = 1 + rng() % 5, nv = 1 + rng() % 3;
      DegOneMatrix M = random_square(f, m, nv, rng);
      switch (t % 3) {
        case 1: M = conjugate(strictly_lower(M), fuzz::random_gl(f, m, rng)); break;
        case 2:
          if (m >= 3) M = padded_nconj(f, m, nv, rng);
          break;
        default: break;
      }
      const bool by_minors = is_nilpotent_by_minors(M);
      const bool by_power = is_nilpotent_by_power(M);
      nilpotent += by_power;
      o.require(by_minors == by_power, label(f) + ": criteria disagree on\n" + M.to_string());
    }
  }
  o.summary = std::to_string(total) + " matrices (m <= 5, nvars <= 3), " + std::to_string(nilpotent) + " nilpotent";
  return o;
}

// 8. Strong nilpotence vs generic-tuple product
Outcome strong_nilpotence_oracle() {
  Outcome o;
  fuzz::Rng rng(8008);
  std::size_t total = 0, strong = 0;
  for (FieldSpec f : kFields) {
    for (int t = 0; t < 60; ++t, ++total) {
      const std::size_t m = 1 + rng() % 4, nv = 1 + rng() % 3;
      DegOneMatrix M = random_square(f, m, nv, rng);
      switch (t % 4) {
        case 1:
        case 2: M = conjugate(strictly_lower(M), fuzz::random_gl(f, m, rng)); break;
        case 3:
          if (m >= 3) M = padded_nconj(f, m, nv, rng);
          break;
        default: break;
      }
      const auto s = strongly_nilpotent_triangularize(M);
      const bool vanishes = generic_product(M, m).is_zero();
      strong += s.triangularizable();
      o.require(s.triangularizable() == vanishes, label(f) + ": oracles disagree on\n" + M.to_string());
      if (s.triangularizable()) {
        o.require(verify_triangularization(M, *s.U, *s.U_inv), label(f) + ": bad U for\n" + M.to_string());
      }
    }
  }
  o.summary = std::to_string(total) + " matrices (m <= 4), " + std::to_string(strong) + " strongly nilpotent";
  return o;
}

// 9. Chain rule
Outcome chain_identity() {
  Outcome o;
  fuzz::Rng rng(9009);
  std::size_t total = 0;
  for (FieldSpec f : kFields) {
    for (int t = 0; t < 60; ++t, ++total) {
      const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
      std::vector<Poly> comps;
      for (std::size_t i = 0; i < m; ++i) comps.push_back(fuzz::random_quadratic(f, n, n, rng));
      const QuadMap H(f, n, comps);
      const Transform tf(fuzz::random_gl(f, m, rng), fuzz::random_gl(f, n, rng));
      const DegOneMatrix lhs = jacobian_of(compose_linear(H, tf));
      const DegOneMatrix rhs = substitute_affine(apply_transform(jacobian_of(H), tf), tf.T(),
                                                 std::vector<Scalar>(n, Scalar(f)));
      o.require(lhs == rhs, label(f) + ": chain rule fails for\n" + H.to_string());
    }
  }
  o.summary = std::to_string(total) + " random (H, S, T)";
  return o;
}

// 10. Anticommutation of square-zero Jacobians
Outcome anticommutation() {
  Outcome o;
  fuzz::Rng rng(10010);
  std::size_t total = 0, homogeneous = 0;
  auto check = [&](const QuadMap& h) {
    const DegOneMatrix J = jacobian_of(h);
    if (!(J.to_poly_matrix() * J.to_poly_matrix()).is_zero()) return;
    ++total;
    const PolyMatrix xy = tuple_product(J, {0, 1}, 2);
    const PolyMatrix yx = tuple_product(J, {1, 0}, 2);
    o.require((xy + yx).is_zero(), label(h.field()) + ": JH(y)JH(x) + JH(x)JH(y) != 0 for\n" + h.to_string());
    const bool homog = h.without_constant().is_quadratic_homogeneous();
    if (homog && h.field().characteristic() != 2) {
      ++homogeneous;
      o.require(xy.is_zero(), label(h.field()) + ": homogeneous JH(x)JH(y) != 0 for\n" + h.to_string());
    }
  };
  for (FieldSpec f : kFields) {
    for (int t = 0; t < 60; ++t) {
      const bool homog = t % 2 == 0;
      const QuadMap base = fuzz::random_square_zero(f, 2 + rng() % 5, rng, homog);
      check(base);
      check(fuzz::conjugate_map(base, rng, !homog));
    }
  }
  check(fuzz::example_b());
  check(fuzz::example_c());
  o.summary = std::to_string(total) + " maps with (JH)^2 = 0, " + std::to_string(homogeneous) +
              " homogeneous in characteristic != 2";
  return o;
}

// 11. Transcendence degree equals rank
Outcome trdeg_evidence() {
  Outcome o;
  fuzz::Rng rng(11011);
  std::size_t total = 0, triples = 0;
  for (FieldSpec f : {Q, F5}) {
    for (int t = 0; t < 30; ++t, ++total) {
      const std::size_t m = 3 + rng() % 2, n = 2 + rng() % 3;
      const QuadMap h = fuzz::random_low_rank_map(f, m, n, rng);
      const auto tr = trdeg_rank2(h);
      o.require(tr.rank <= 2, label(f) + ": rank " + std::to_string(tr.rank));
      o.require(tr.claim == std::optional<std::size_t>(tr.rank), label(f) + ": trdeg claim differs from rank");
      std::vector<std::size_t> pick{0, 1, 2};
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          for (std::size_t c = b + 1; c < m; ++c) {
            pick = {a, b, c};
            ++triples;
            const auto ann = annihilator_search(h, pick, 4);
            o.require(ann && evaluate_relation(*ann.relation, h, pick).is_zero(),
                      label(f) + ": no relation among H" + std::to_string(a + 1) + ", H" + std::to_string(b + 1) +
                          ", H" + std::to_string(c + 1) + " for\n" + h.to_string());
          }
        }
      }
    }
  }
  o.summary = std::to_string(total) + " maps over Q and GF(5), " + std::to_string(triples) +
              " component triples with a relation of degree <= 4";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadrk acceptance suite"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-11)")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "example A over GF(2) and Q", example_a},
      {2, "example B square-zero Jacobian", example_b},
      {3, "example C triple product in characteristic 2", example_c},
      {4, "classification fuzz", classification_fuzz},
      {5, "triangularization fuzz", triangularization_fuzz},
      {6, "Nconj negative control", negative_control},
      {7, "minor vs power nilpotency", eigen_equivalence},
      {8, "strong nilpotence oracle", strong_nilpotence_oracle},
      {9, "chain rule identity", chain_identity},
      {10, "anticommutation of square-zero Jacobians", anticommutation},
      {11, "transcendence degree of rank <= 2 maps", trdeg_evidence},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= 60.0, "took longer than 60 s");
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing << "]";
    if (!o.summary.empty()) std::cout << " " << o.summary;
    std::cout << '\n';
    for (const auto& f : o.failures) std::cout << "    " << f << '\n';
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
