#ifndef QUADRK_CLASSIFY_HPP
#define QUADRK_CLASSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "quadrk/jacobian.hpp"
#include "quadrk/shape.hpp"

namespace quadrk {

struct JacobianFlags {
  bool is_jacobian = false;
  bool refinement_applied = false;
  std::string note;
};

struct ClassificationReport {
  NormalFormTag tag;
  Transform tf;              // normal_form = S M T
  DegOneMatrix normal_form;
  std::size_t rank = 0;
  JacobianFlags jacobian;
  std::vector<std::string> trace;  // the moves that produced (S, T), in order
};

/// Pass jacobian = true to apply the Jacobian refinements; the caller
/// asserts that M is a Jacobian matrix (checked again internally).
/// Throws RankMismatch unless rank M = 1.
ClassificationReport classify_rank1(const DegOneMatrix& m, bool jacobian);
/// Throws RankMismatch unless rank M = 2; InternalContradiction when a step
/// that the underlying theorem guarantees fails.
ClassificationReport classify_rank2(const DegOneMatrix& m, bool jacobian);
/// Dispatches on rank; throws OutOfScope for rank >= 3.
ClassificationReport classify(const DegOneMatrix& m);

struct TrdegReport {
  std::size_t rank = 0;
  std::optional<std::size_t> claim;  // empty when no theorem applies
  std::string note;
};

/// Transcendence degree of K(H) where a theorem pins it down: equal to the
/// Jacobian rank when 1/2 is in K and the rank is <= 2, and 3 for the
/// characteristic 2 antisymmetric rank-2 case.
TrdegReport trdeg_rank2(const QuadMap& h);

}  // namespace quadrk

#endif  // QUADRK_CLASSIFY_HPP
