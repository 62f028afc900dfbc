#ifndef QUADRK_CERTIFICATE_HPP
#define QUADRK_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quadrk/classify.hpp"
#include "quadrk/triangularize.hpp"

namespace quadrk {

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view data);

/// Plain-text certificate. Layout, one item per line:
///   kind <classification|triangularization|strong-nilpotence|jh2-suite>
///   input-sha256 <hex>
///   field <Q|GF(p)>
///   claim <key> <value>              (repeated)
///   matrix <name> <rows> <cols>      followed by rows of scalars
///   normal-form <rows> <cols> <vars> followed by rows of polynomials
///   note <text>                      (ignored by the verifier)
struct Certificate {
  std::string kind;
  std::string input_sha256;
  FieldSpec field = FieldSpec::rationals();
  std::vector<std::pair<std::string, std::string>> claims;
  std::vector<std::pair<std::string, ConstMatrix>> matrices;
  std::optional<DegOneMatrix> normal_form;
  std::vector<std::string> notes;

  const std::string* claim(std::string_view key) const;
  const ConstMatrix* matrix(std::string_view name) const;
};

std::string write_certificate(const Certificate& c);
/// Throws SourceError on malformed text.
Certificate read_certificate(std::string_view text);

Certificate classification_certificate(std::string_view input_text, const ClassificationReport& r);
Certificate triangularization_certificate(std::string_view input_text, FieldSpec field,
                                          const TriangularizationCertificate& t);
Certificate strong_nilpotence_certificate(std::string_view input_text, FieldSpec field, const StrongNilpotence& s);
Certificate jh2_certificate(std::string_view input_text, FieldSpec field, const Jh2Report& r);

struct VerificationReport {
  bool verified = false;
  std::vector<std::string> checks;  // what was recomputed
};

/// Recomputes every claim from the payload and the input alone, using matrix
/// products, transforms, shape predicates and ranks. Throws HashMismatch or
/// ClaimFailed with the failing check.
VerificationReport verify_certificate(const Certificate& c, std::string_view input_text);

}  // namespace quadrk

#endif  // QUADRK_CERTIFICATE_HPP
