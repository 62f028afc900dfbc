#ifndef QUADRK_TRIANGULARIZE_HPP
#define QUADRK_TRIANGULARIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "quadrk/classify.hpp"

namespace quadrk {

enum class QuadnilCase { I, II, III, IVUpper, IVNconj };

std::string_view to_string(QuadnilCase c);

struct NconjData {
  Poly f;  // the (1,2) and (2,3) entries are f + 1
  Poly b;  // (2,1) entry; (3,2) is -b
};

struct QuadnilOutcome {
  QuadnilCase which;
  /// P^{-1} N P is strictly lower triangular, except for IVNconj where it is
  /// the matrix ((0, f+1, 0), (b, 0, f+1), (0, -b, 0)).
  ConstMatrix P;
  std::optional<NconjData> nconj;
};

/// Small nilpotent blocks with a prescribed constant part:
///   I    2x2, N(0) = 0
///   II   2x2, N(0) = E21
///   III  3x3, N(0) = E13
///   IV   3x3, N(0) = E12 + E23
/// `which` must be I, II, III or IVUpper (the latter selects case IV).
/// Throws PreconditionViolated if N(0) or nilpotency does not match.
QuadnilOutcome quadnil_case(const DegOneMatrix& n, QuadnilCase which);

struct TriangularizationCertificate {
  ConstMatrix U;      // U^{-1} M U strictly lower triangular
  ConstMatrix U_inv;
  std::optional<NormalFormTag> tag;  // classification used, if any
  std::vector<std::string> trace;
};

/// Triangularizes the Jacobian of a quadratic map whose Jacobian is
/// nilpotent of rank <= 2. Throws NotNilpotent, RankTooHigh,
/// DimensionMismatch for non-square maps, and InternalContradiction if the
/// Nconj case is reached or the result fails re-verification.
TriangularizationCertificate triangularize_rank_le2(const QuadMap& h);

/// Re-multiplies and checks U^{-1} M U strictly lower triangular.
bool verify_triangularization(const DegOneMatrix& m, const ConstMatrix& U, const ConstMatrix& U_inv);

struct Jh2Report {
  bool square_zero = false;
  /// The remaining fields are empty when a hypothesis fails.
  std::optional<bool> anticomm_holds;            // M(y) M(x) = -M(x) M(y)
  std::optional<bool> pair_product_zero;         // homogeneous, 1/2 in K
  std::optional<bool> triple_product_zero;       // 1/2 in K
  std::optional<bool> quadratic_pair_zero;       // pair product of the quadratic part, 1/2 in K
  // computed regardless of hypotheses
  bool pair_product_raw_zero = false;
  bool triple_product_raw_zero = false;
};

Jh2Report jh2_suite(const QuadMap& h);

/// True iff M(y1) ... M(yk) vanishes for k disjoint generic tuples.
bool generic_product_vanishes(const DegOneMatrix& m, std::size_t k);

}  // namespace quadrk

#endif  // QUADRK_TRIANGULARIZE_HPP
