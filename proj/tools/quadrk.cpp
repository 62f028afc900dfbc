#include <CLI11.hpp>

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quadrk/certificate.hpp"
#include "quadrk/fuzz.hpp"
#include "quadrk/io.hpp"
#include "quadrk/text.hpp"

namespace fs = std::filesystem;
using namespace quadrk;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInputError = 2, kContradiction = 3 };

struct Options {
  std::string input;
  std::string certificate;
  std::string out;
  std::size_t max_degree = 4;
  std::string components;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t count = 1;
  std::string family;
  std::string field = "Q";
  std::size_t m = 3, n = 3, nvars = 3;
};

// Input currently being processed, for reproduction dumps.
std::string g_input_text;
std::string g_command_line;

struct Loaded {
  std::string text;
  InputObject object;
};

Loaded load(const std::string& path) {
  Loaded l{read_text_file(path), DegOneMatrix(FieldSpec::rationals(), 1, 1, 0)};
  g_input_text = l.text;
  try {
    l.object = parse_input_text(l.text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
  return l;
}

DegOneMatrix as_matrix(const Loaded& l) {
  if (const auto* h = std::get_if<QuadMap>(&l.object)) return jacobian_of(*h);
  return std::get<DegOneMatrix>(l.object);
}

const QuadMap& as_map(const Loaded& l, const std::string& cmd) {
  const auto* h = std::get_if<QuadMap>(&l.object);
  if (!h) fail(ErrorCode::NotJacobianInput, cmd + " expects a map file (`map m` header)");
  return *h;
}

std::string cert_path(const Options& o) { return o.out.empty() ? o.input + ".cert" : o.out; }

void emit_certificate(const Options& o, const Certificate& c) {
  const std::string path = cert_path(o);
  write_text_file(path, write_certificate(c));
  std::cout << "certificate: " << path << '\n';
}

void print_matrix(const std::string& name, const ConstMatrix& m) {
  std::cout << name << ":\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << "  ";
    for (std::size_t j = 0; j < m.cols(); ++j) std::cout << (j ? ", " : "") << m(i, j).to_string();
    std::cout << '\n';
  }
}

void print_poly_rows(const std::string& name, const DegOneMatrix& m) {
  std::cout << name << ":\n";
  std::istringstream rows(m.to_string());
  for (std::string line; std::getline(rows, line);) std::cout << "  " << line << '\n';
}

std::string yes(bool b) { return b ? "true" : "false"; }
std::string yes(const std::optional<bool>& b) { return b ? yes(*b) : "NA"; }

int cmd_rank(const Options& o) {
  const std::size_t r = rank_symbolic(as_matrix(load(o.input)));
  std::cout << "rank: " << r << '\n';
  return kOk;
}

int cmd_classify(const Options& o) {
  const Loaded l = load(o.input);
  const ClassificationReport r = classify(as_matrix(l));
  std::cout << "tag: " << to_string(r.tag) << "\nrank: " << r.rank << '\n';
  if (r.jacobian.is_jacobian) std::cout << "jacobian: true\n";
  if (!r.jacobian.note.empty()) std::cout << "note: " << r.jacobian.note << '\n';
  print_poly_rows("normal form", r.normal_form);
  emit_certificate(o, classification_certificate(l.text, r));
  return kOk;
}

int cmd_is_jacobian(const Options& o, bool as_file) {
  const Loaded l = load(o.input);
  const JacobianCheck c = is_jacobian(as_matrix(l));
  if (!c) {
    std::cout << "jacobian: false\nreason: " << c.reason << '\n';
    return kNegative;
  }
  if (as_file) {
    const std::string text = format_map(*c.map);
    if (o.out.empty()) {
      std::cout << text;
    } else {
      write_text_file(o.out, text);
      std::cout << "map: " << o.out << '\n';
    }
  } else {
    std::cout << "jacobian: true\n" << c.map->to_string() << '\n';
  }
  return kOk;
}

int cmd_hessian(const Options& o) {
  const HessianIntegral r = hessian_integrate(as_matrix(load(o.input)));
  if (!r) {
    std::cout << "hessian: false\nreason: " << r.reason << '\n';
    return kNegative;
  }
  std::cout << "hessian: true\nh = " << r.h->to_string() << '\n';
  return kOk;
}

int cmd_nilpotent(const Options& o) {
  const DegOneMatrix m = as_matrix(load(o.input));
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "nilpotency needs a square matrix");
  const bool nil = is_nilpotent(m);
  std::cout << "nilpotent: " << yes(nil) << '\n';
  return nil ? kOk : kNegative;
}

int cmd_strongly_nilpotent(const Options& o) {
  const Loaded l = load(o.input);
  const DegOneMatrix m = as_matrix(l);
  if (!m.is_square()) fail(ErrorCode::DimensionMismatch, "strong nilpotence needs a square matrix");
  const StrongNilpotence s = strongly_nilpotent_triangularize(m);
  if (s.triangularizable()) {
    std::cout << "strongly-nilpotent: true\n";
    print_matrix("U", *s.U);
  } else {
    std::cout << "strongly-nilpotent: false\nNotTriangularizable: leading " << s.stuck_block_size << "x"
              << s.stuck_block_size << " block has no common constant kernel vector\n";
  }
  emit_certificate(o, strong_nilpotence_certificate(l.text, m.field(), s));
  return s.triangularizable() ? kOk : kNegative;
}

int cmd_triangularize(const Options& o) {
  const Loaded l = load(o.input);
  const QuadMap& h = as_map(l, "triangularize");
  const TriangularizationCertificate t = triangularize_rank_le2(h);
  for (const auto& step : t.trace) std::cout << "step: " << step << '\n';
  print_matrix("U", t.U);
  emit_certificate(o, triangularization_certificate(l.text, h.field(), t));
  return kOk;
}

int cmd_jh2(const Options& o) {
  const Loaded l = load(o.input);
  const QuadMap& h = as_map(l, "jh2-check");
  const Jh2Report r = jh2_suite(h);
  std::cout << "square-zero: " << yes(r.square_zero) << "\nanticomm: " << yes(r.anticomm_holds)
            << "\npair-product-zero: " << yes(r.pair_product_zero)
            << "\ntriple-product-zero: " << yes(r.triple_product_zero)
            << "\nquadratic-pair-zero: " << yes(r.quadratic_pair_zero)
            << "\npair-product-raw-zero: " << yes(r.pair_product_raw_zero)
            << "\ntriple-product-raw-zero: " << yes(r.triple_product_raw_zero) << '\n';
  emit_certificate(o, jh2_certificate(l.text, h.field(), r));
  return r.square_zero ? kOk : kNegative;
}

int cmd_trdeg(const Options& o) {
  const Loaded l = load(o.input);
  const TrdegReport r = trdeg_rank2(as_map(l, "trdeg"));
  std::cout << "rank: " << r.rank << "\ntrdeg: " << (r.claim ? std::to_string(*r.claim) : "unknown") << '\n';
  if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
  return r.claim ? kOk : kNegative;
}

std::vector<std::size_t> parse_components(const std::string& spec, std::size_t m) {
  std::vector<std::size_t> out;
  if (spec.empty()) {
    for (std::size_t i = 0; i < m; ++i) out.push_back(i);
    return out;
  }
  std::stringstream in(spec);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t v = 0;
    try {
      v = std::stoul(item);
    } catch (const std::exception&) {
      fail(ErrorCode::SyntaxError, "--components expects indices like 1,2,3");
    }
    if (v == 0 || v > m) fail(ErrorCode::IndexOutOfRange, "component " + item + " out of range 1.." + std::to_string(m));
    out.push_back(v - 1);
  }
  return out;
}

int cmd_annihilate(const Options& o) {
  const Loaded l = load(o.input);
  const QuadMap& h = as_map(l, "annihilate");
  const auto subset = parse_components(o.components, h.size());
  const Annihilator a = annihilator_search(h, subset, o.max_degree);
  if (!a) {
    std::cout << "NoRelationUpTo(" << a.searched_degree << ")\n";
    return kNegative;
  }
  std::cout << "relation: " << a.relation->to_string() << "\n(y_i stands for component H" << subset[0] + 1
            << (subset.size() > 1 ? ", ..." : "") << " in the listed order)\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  const std::string input = read_text_file(o.input);
  const Certificate c = [&] {
    try {
      return read_certificate(read_text_file(o.certificate));
    } catch (const Error& e) {
      throw Error(e.code(), o.certificate + ": " + e.detail());
    }
  }();
  try {
    const VerificationReport r = verify_certificate(c, input);
    for (const auto& check : r.checks) std::cout << "ok: " << check << '\n';
    std::cout << "verified: true\n";
    return kOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ClaimFailed && e.code() != ErrorCode::HashMismatch) throw;
    std::cout << "verified: false\n" << e.what() << '\n';
    return kNegative;
  }
}

int cmd_fuzz(const Options& o) {
  fuzz::Spec base;
  base.field = FieldSpec::parse(o.field);
  base.m = o.m;
  base.n = o.n;
  base.nvars = o.nvars;
  base.family = o.family;
  if (o.count == 0) fail(ErrorCode::InvalidSpec, "--count must be positive");
  if (o.out.empty() && o.count != 1) fail(ErrorCode::InvalidSpec, "--out DIR is required for --count > 1");

  const auto render = [&](std::uint64_t seed) {
    fuzz::Spec s = base;
    s.seed = seed;
    const fuzz::Instance inst = fuzz::generate(s);
    const bool map = std::holds_alternative<QuadMap>(inst.input);
    std::string text = map ? format_map(std::get<QuadMap>(inst.input)) : format_matrix(std::get<DegOneMatrix>(inst.input));
    return std::tuple{text, inst.expected, map};
  };
  if (o.out.empty()) {
    const auto [text, expected, map] = render(o.seed);
    std::cout << "# expected: " << expected << '\n' << text;
    return kOk;
  }
  fs::create_directories(o.out);
  // validate the spec once before spawning workers
  render(o.seed);
  std::vector<std::exception_ptr> errors(std::max<std::size_t>(1, o.jobs));
  std::vector<std::thread> workers;
  const std::size_t jobs = std::min(errors.size(), o.count);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < o.count; i += jobs) {
          const std::uint64_t seed = o.seed + i;
          const auto [text, expected, map] = render(seed);
          const fs::path stem = fs::path(o.out) / (o.family + "-" + std::to_string(seed));
          write_text_file(stem.string() + (map ? ".map" : ".mat"), text);
          write_text_file(stem.string() + ".expected", expected + "\n");
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::cout << "generated " << o.count << " instance" << (o.count == 1 ? "" : "s") << " in " << o.out << '\n';
  return kOk;
}

void dump_repro(const Options& o, const std::string& what) {
  const std::string digest = sha256_hex(g_input_text).substr(0, 12);
  fs::path dir = o.out.empty() ? fs::current_path() : fs::path(o.out);
  if (!fs::is_directory(dir)) dir = dir.parent_path().empty() ? fs::current_path() : dir.parent_path();
  const fs::path path = dir / ("quadrk-repro-" + digest + ".txt");
  std::ostringstream text;
  text << "# command: " << g_command_line << "\n# error: " << what << "\n# input follows\n" << g_input_text;
  try {
    write_text_file(path, text.str());
    std::cerr << "reproduction written to " << path.string() << '\n';
  } catch (const Error&) {
    std::cerr << "could not write reproduction file\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strncmp(argv[i], "--field-override", 16) == 0) {
      std::cerr << "error: --field-override is not supported; the field comes from the input file\n";
      return kInputError;
    }
    g_command_line += (i > 1 ? " " : "") + std::string(argv[i]);
  }

  CLI::App app{"Exact classification and triangularization of degree-1 polynomial matrices"};
  app.require_subcommand(1);
  Options o;

  const auto file_cmd = [&](const char* name, const char* help, bool cert = false) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("input", o.input, "matrix or map file")->required()->check(CLI::ExistingFile);
    if (cert) c->add_option("--out", o.out, "certificate path (default: <input>.cert)");
    return c;
  };
  file_cmd("rank", "symbolic rank over K(x)");
  file_cmd("classify", "normal form under equivalence, with certificate", true);
  file_cmd("is-jacobian", "decide whether the matrix is the Jacobian of a quadratic map");
  file_cmd("integrate", "write a quadratic map whose Jacobian is the matrix")
      ->add_option("--out", o.out, "map file path (default: stdout)");
  file_cmd("hessian-integrate", "find h with Hessian equal to the matrix");
  file_cmd("nilpotent", "decide nilpotency");
  file_cmd("strongly-nilpotent", "strict triangularization by a constant similarity", true);
  file_cmd("triangularize", "triangularize a nilpotent Jacobian of rank <= 2", true);
  file_cmd("jh2-check", "product identities for maps with (JH)^2 = 0", true);
  file_cmd("trdeg", "transcendence degree where it is determined");
  CLI::App* ann = file_cmd("annihilate", "search for an algebraic relation among components");
  ann->add_option("--max-degree", o.max_degree, "largest relation degree")->check(CLI::PositiveNumber);
  ann->add_option("--components", o.components, "1-based component indices, e.g. 1,2,3");

  CLI::App* ver = app.add_subcommand("verify", "check a certificate against its input");
  ver->add_option("certificate", o.certificate)->required()->check(CLI::ExistingFile);
  ver->add_option("input", o.input)->required()->check(CLI::ExistingFile);

  CLI::App* fz = app.add_subcommand("fuzz", "generate random instances");
  fz->add_option("--family", o.family, "normal-form tag, srk2nmain or jh2")->required();
  fz->add_option("--field", o.field, "Q or GF(p)");
  fz->add_option("--m", o.m);
  fz->add_option("--n", o.n);
  fz->add_option("--nvars", o.nvars);
  fz->add_option("--seed", o.seed);
  fz->add_option("--count", o.count);
  fz->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
  fz->add_option("--out", o.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "rank") return cmd_rank(o);
    if (cmd == "classify") return cmd_classify(o);
    if (cmd == "is-jacobian") return cmd_is_jacobian(o, false);
    if (cmd == "integrate") return cmd_is_jacobian(o, true);
    if (cmd == "hessian-integrate") return cmd_hessian(o);
    if (cmd == "nilpotent") return cmd_nilpotent(o);
    if (cmd == "strongly-nilpotent") return cmd_strongly_nilpotent(o);
    if (cmd == "triangularize") return cmd_triangularize(o);
    if (cmd == "jh2-check") return cmd_jh2(o);
    if (cmd == "trdeg") return cmd_trdeg(o);
    if (cmd == "annihilate") return cmd_annihilate(o);
    if (cmd == "verify") return cmd_verify(o);
    if (cmd == "fuzz") return cmd_fuzz(o);
  } catch (const InternalContradiction& e) {
    std::cerr << "InternalContradiction: " << e.what() << '\n';
    dump_repro(o, e.what());
    return kContradiction;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
