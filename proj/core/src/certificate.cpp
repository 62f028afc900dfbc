#include "quadrk/certificate.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <charconv>
#include <sstream>

#include "quadrk/io.hpp"
#include "quadrk/text.hpp"

namespace quadrk {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::IoError, "SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

const std::string* Certificate::claim(std::string_view key) const {
  for (const auto& [k, v] : claims) {
    if (k == key) return &v;
  }
  return nullptr;
}

const ConstMatrix* Certificate::matrix(std::string_view name) const {
  for (const auto& [k, v] : matrices) {
    if (k == name) return &v;
  }
  return nullptr;
}

std::string write_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "kind " << c.kind << "\ninput-sha256 " << c.input_sha256 << "\nfield " << c.field.to_string() << '\n';
  for (const auto& [k, v] : c.claims) out << "claim " << k << ' ' << v << '\n';
  for (const auto& [name, m] : c.matrices) {
    out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m(i, j).to_string();
      out << '\n';
    }
  }
  if (c.normal_form) {
    const DegOneMatrix& nf = *c.normal_form;
    out << "normal-form " << nf.rows() << ' ' << nf.cols() << ' ' << nf.nvars() << '\n';
    for (std::size_t i = 0; i < nf.rows(); ++i) {
      for (std::size_t j = 0; j < nf.cols(); ++j) out << (j ? ", " : "") << nf.entry(i, j).to_string();
      out << '\n';
    }
  }
  for (const auto& n : c.notes) out << "note " << n << '\n';
  return out.str();
}

namespace {

struct Cursor {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  bool done() const { return pos == lines.size(); }
  std::size_t number() const { return pos + 1; }
};

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw SourceError(ErrorCode::SyntaxError, line, 0, what);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (s.empty()) return out;
    std::size_t k = 0;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    out.push_back(s.substr(0, k));
    s.remove_prefix(k);
  }
}

std::size_t count(std::string_view w, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size()) bad(line, "expected an integer, got '" + std::string(w) + "'");
  return v;
}

std::vector<std::string_view> split_row(std::string_view row, std::size_t n, std::size_t line) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t comma = row.find(',');
    out.push_back(row.substr(0, comma));
    if (comma == std::string_view::npos) break;
    row.remove_prefix(comma + 1);
  }
  if (out.size() != n) bad(line, "expected " + std::to_string(n) + " entries");
  return out;
}

template <typename Fn>
auto located(std::size_t line, Fn fn) {
  try {
    return fn();
  } catch (const SourceError&) {
    throw;
  } catch (const Error& e) {
    throw SourceError(e.code(), line, 0, e.detail());
  }
}

}  // namespace

Certificate read_certificate(std::string_view text) {
  Cursor cur;
  while (true) {
    const std::size_t nl = text.find('\n');
    std::string_view l = text.substr(0, nl);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    cur.lines.push_back(l);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  Certificate c;
  bool have_kind = false, have_hash = false, have_field = false;
  while (!cur.done()) {
    const std::size_t line = cur.number();
    const std::string_view raw = cur.lines[cur.pos++];
    const auto w = words(raw);
    if (w.empty() || w[0].front() == '#') continue;
    const std::string_view key = w[0];
    if (key == "note") {
      const std::size_t at = raw.find("note") + 4;
      c.notes.emplace_back(raw.substr(std::min(raw.size(), at + 1)));
      continue;
    }
    if (key == "kind" || key == "input-sha256" || key == "field") {
      if (w.size() != 2) bad(line, "'" + std::string(key) + "' takes one argument");
      if (key == "kind") c.kind = w[1], have_kind = true;
      if (key == "input-sha256") c.input_sha256 = w[1], have_hash = true;
      if (key == "field") c.field = located(line, [&] { return FieldSpec::parse(w[1]); }), have_field = true;
      continue;
    }
    if (!have_field) bad(line, "'field' must precede claims and matrices");
    if (key == "claim") {
      if (w.size() != 3) bad(line, "'claim' takes a key and a value");
      c.claims.emplace_back(w[1], w[2]);
    } else if (key == "matrix") {
      if (w.size() != 4) bad(line, "'matrix' takes a name and two dimensions");
      const std::size_t r = count(w[2], line), k = count(w[3], line);
      ConstMatrix m(c.field, r, k);
      for (std::size_t i = 0; i < r; ++i) {
        if (cur.done()) bad(cur.number(), "matrix " + std::string(w[1]) + " is truncated");
        const std::size_t rl = cur.number();
        const auto entries = split_row(cur.lines[cur.pos++], k, rl);
        for (std::size_t j = 0; j < k; ++j) {
          m(i, j) = located(rl, [&] { return parse_scalar(entries[j], c.field); });
        }
      }
      c.matrices.emplace_back(std::string(w[1]), std::move(m));
    } else if (key == "normal-form") {
      if (w.size() != 4) bad(line, "'normal-form' takes three dimensions");
      const std::size_t r = count(w[1], line), k = count(w[2], line), nv = count(w[3], line);
      PolyMatrix p(c.field, r, k, nv);
      for (std::size_t i = 0; i < r; ++i) {
        if (cur.done()) bad(cur.number(), "normal form is truncated");
        const std::size_t rl = cur.number();
        const auto entries = split_row(cur.lines[cur.pos++], k, rl);
        for (std::size_t j = 0; j < k; ++j) {
          p(i, j) = located(rl, [&] { return parse_poly(entries[j], c.field, nv); });
        }
      }
      c.normal_form = located(line, [&] { return DegOneMatrix::from_poly_matrix(p); });
    } else {
      bad(line, "unknown certificate item '" + std::string(key) + "'");
    }
  }
  if (!have_kind || !have_hash || !have_field) bad(cur.number(), "certificate needs kind, input-sha256 and field");
  return c;
}

namespace {

Certificate base(std::string_view kind, std::string_view input_text, FieldSpec field) {
  Certificate c;
  c.kind = kind;
  c.input_sha256 = sha256_hex(input_text);
  c.field = field;
  return c;
}

std::string flag(bool b) { return b ? "true" : "false"; }
std::string flag(const std::optional<bool>& b) { return b ? flag(*b) : "NA"; }

}  // namespace

Certificate classification_certificate(std::string_view input_text, const ClassificationReport& r) {
  Certificate c = base("classification", input_text, r.normal_form.field());
  c.claims = {{"tag", std::string(to_string(r.tag))}, {"rank", std::to_string(r.rank)}};
  c.matrices = {{"S", r.tf.S()}, {"S_inv", r.tf.S_inv()}, {"T", r.tf.T()}, {"T_inv", r.tf.T_inv()}};
  c.normal_form = r.normal_form;
  c.notes = r.trace;
  return c;
}

Certificate triangularization_certificate(std::string_view input_text, FieldSpec field,
                                          const TriangularizationCertificate& t) {
  Certificate c = base("triangularization", input_text, field);
  c.claims = {{"shape", "strictly-lower"}};
  c.matrices = {{"U", t.U}, {"U_inv", t.U_inv}};
  c.notes = t.trace;
  return c;
}

Certificate strong_nilpotence_certificate(std::string_view input_text, FieldSpec field, const StrongNilpotence& s) {
  Certificate c = base("strong-nilpotence", input_text, field);
  c.claims = {{"triangularizable", flag(s.triangularizable())}};
  if (s.triangularizable()) {
    c.claims.emplace_back("shape", "strictly-lower");
    c.matrices = {{"U", *s.U}, {"U_inv", *s.U_inv}};
  } else {
    c.claims.emplace_back("stuck-block-size", std::to_string(s.stuck_block_size));
  }
  return c;
}

Certificate jh2_certificate(std::string_view input_text, FieldSpec field, const Jh2Report& r) {
  Certificate c = base("jh2-suite", input_text, field);
  c.claims = {{"square-zero", flag(r.square_zero)},
              {"anticomm", flag(r.anticomm_holds)},
              {"pair-product-zero", flag(r.pair_product_zero)},
              {"triple-product-zero", flag(r.triple_product_zero)},
              {"quadratic-pair-zero", flag(r.quadratic_pair_zero)},
              {"pair-product-raw-zero", flag(r.pair_product_raw_zero)},
              {"triple-product-raw-zero", flag(r.triple_product_raw_zero)}};
  return c;
}

namespace {

[[noreturn]] void claim_failed(const std::string& what) { fail(ErrorCode::ClaimFailed, what); }

const std::string& need_claim(const Certificate& c, std::string_view key) {
  const std::string* v = c.claim(key);
  if (!v) claim_failed("missing claim '" + std::string(key) + "'");
  return *v;
}

const ConstMatrix& need_matrix(const Certificate& c, std::string_view name, std::size_t n) {
  const ConstMatrix* m = c.matrix(name);
  if (!m) claim_failed("missing matrix '" + std::string(name) + "'");
  if (m->rows() != n || m->cols() != n) claim_failed("matrix '" + std::string(name) + "' has the wrong size");
  return *m;
}

void check(VerificationReport& rep, bool ok, const std::string& what) {
  if (!ok) claim_failed(what);
  rep.checks.push_back(what);
}

void check_inverse_pair(VerificationReport& rep, const ConstMatrix& a, const ConstMatrix& b, const std::string& name) {
  check(rep, (a * b).is_identity() && (b * a).is_identity(), name + " * " + name + "_inv = I");
}

void check_strictly_lower(VerificationReport& rep, const Certificate& c, const DegOneMatrix& m) {
  if (need_claim(c, "shape") != "strictly-lower") claim_failed("unsupported shape claim");
  const ConstMatrix& U = need_matrix(c, "U", m.rows());
  const ConstMatrix& U_inv = need_matrix(c, "U_inv", m.rows());
  check_inverse_pair(rep, U, U_inv, "U");
  check(rep, m.sandwich(U_inv, U).is_strictly_lower(), "U_inv * M * U is strictly lower triangular");
}

std::optional<bool> parse_flag(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  if (v == "NA") return std::nullopt;
  claim_failed("claim value '" + v + "' is not true, false or NA");
}

void check_flag(VerificationReport& rep, const Certificate& c, std::string_view key, std::optional<bool> actual) {
  const auto claimed = parse_flag(need_claim(c, key));
  check(rep, claimed == actual, std::string(key) + " = " + (actual ? (*actual ? "true" : "false") : "NA"));
}

}  // namespace

VerificationReport verify_certificate(const Certificate& c, std::string_view input_text) {
  if (sha256_hex(input_text) != c.input_sha256) fail(ErrorCode::HashMismatch, "input digest does not match");
  VerificationReport rep;
  rep.checks.push_back("input digest matches");
  const InputObject input = parse_input_text(input_text);
  const auto* map = std::get_if<QuadMap>(&input);
  const DegOneMatrix m = map ? jacobian_of(*map) : std::get<DegOneMatrix>(input);
  if (m.field() != c.field) claim_failed("certificate field differs from the input field");

  if (c.kind == "classification") {
    const auto tag = parse_tag(need_claim(c, "tag"));
    if (!tag) claim_failed("unknown tag '" + need_claim(c, "tag") + "'");
    if (!c.normal_form) claim_failed("missing normal form");
    const ConstMatrix& S = need_matrix(c, "S", m.rows());
    const ConstMatrix& S_inv = need_matrix(c, "S_inv", m.rows());
    const ConstMatrix& T = need_matrix(c, "T", m.cols());
    const ConstMatrix& T_inv = need_matrix(c, "T_inv", m.cols());
    check_inverse_pair(rep, S, S_inv, "S");
    check_inverse_pair(rep, T, T_inv, "T");
    check(rep, m.sandwich(S, T) == *c.normal_form, "S * M * T equals the normal form");
    check(rep, shape_predicate(*c.normal_form, *tag), "normal form has shape " + need_claim(c, "tag"));
    const std::size_t r = rank_symbolic(m);
    check(rep, rank_symbolic(*c.normal_form) == r, "rank is preserved");
    check(rep, need_claim(c, "rank") == std::to_string(r) && tag_rank(*tag) == r, "rank claim = " + std::to_string(r));
  } else if (c.kind == "triangularization") {
    if (!map) claim_failed("triangularization certificates refer to map files");
    check_strictly_lower(rep, c, m);
  } else if (c.kind == "strong-nilpotence") {
    if (!m.is_square()) claim_failed("strong nilpotence needs a square matrix");
    const auto tri = parse_flag(need_claim(c, "triangularizable"));
    if (!tri) claim_failed("triangularizable must be true or false");
    if (*tri) {
      check_strictly_lower(rep, c, m);
    } else {
      check(rep, !generic_product(m, m.rows()).is_zero(), "the m-fold generic product is nonzero");
    }
  } else if (c.kind == "jh2-suite") {
    if (!map) claim_failed("jh2-suite certificates refer to map files");
    if (!m.is_square()) claim_failed("jh2-suite needs a square map");
    const auto at = [](const DegOneMatrix& a, std::size_t t) { return evaluate(a, GenericTuple{a.nvars(), t}, 3); };
    const PolyMatrix x = m.to_poly_matrix();
    const bool square_zero = matmul(x, x).is_zero();
    const PolyMatrix mx = at(m, 0), my = at(m, 1), mz = at(m, 2);
    const PolyMatrix xy = matmul(mx, my);
    const bool half = c.field.has_half();
    const bool homogeneous = map->without_constant().is_quadratic_homogeneous();
    const auto when = [](bool hyp, auto fn) { return hyp ? std::optional<bool>(fn()) : std::nullopt; };
    check_flag(rep, c, "square-zero", square_zero);
    check_flag(rep, c, "anticomm", when(square_zero, [&] { return (matmul(my, mx) + xy).is_zero(); }));
    check_flag(rep, c, "pair-product-zero", when(square_zero && half && homogeneous, [&] { return xy.is_zero(); }));
    const bool triple = matmul(xy, mz).is_zero();
    check_flag(rep, c, "triple-product-zero", when(square_zero && half, [&] { return triple; }));
    check_flag(rep, c, "quadratic-pair-zero", when(square_zero && half, [&] {
                 const DegOneMatrix q = jacobian_of(map->quadratic_part());
                 return matmul(at(q, 0), at(q, 1)).is_zero();
               }));
    check_flag(rep, c, "pair-product-raw-zero", xy.is_zero());
    check_flag(rep, c, "triple-product-raw-zero", triple);
  } else {
    claim_failed("unknown certificate kind '" + c.kind + "'");
  }
  rep.verified = true;
  return rep;
}

}  // namespace quadrk
