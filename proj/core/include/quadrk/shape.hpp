#ifndef QUADRK_SHAPE_HPP
#define QUADRK_SHAPE_HPP

#include <optional>
#include <string_view>

#include "quadrk/degmat.hpp"

namespace quadrk {

enum class NormalFormTag {
  Rank0,
  R1_ColumnOnly,
  R1_RowOnly,
  R1_ColumnHalf,
  R2_TwoColumns,
  R2_TwoRows,
  R2_Hook,
  R2_HookHalf,
  R2_Antisym,
};

std::string_view to_string(NormalFormTag tag);
std::optional<NormalFormTag> parse_tag(std::string_view text);
/// The rank every matrix carrying this tag must have.
std::size_t tag_rank(NormalFormTag tag);

/// Zero pattern plus side conditions of the tag:
///   R1_ColumnOnly   only column 1 nonzero
///   R1_RowOnly      only row 1 nonzero
///   R1_ColumnHalf   column form with column (*, 1/2, 0, ..., 0)
///   R2_TwoColumns   only columns 1-2 nonzero
///   R2_TwoRows      only rows 1-2 nonzero
///   R2_Hook         only row 1 and column 1 nonzero
///   R2_HookHalf     hook with column (*, *, 1/2, 0, ..., 0)
///   R2_Antisym      leading 3x3 antisymmetric with zero diagonal, zero
///                   elsewhere, entries (2,1), (3,1), (3,2) independent over K
bool shape_predicate(const DegOneMatrix& m, NormalFormTag tag);

/// Whether the given affine polynomials are linearly independent over K.
bool linearly_independent(std::span<const Poly> polys);

}  // namespace quadrk

#endif  // QUADRK_SHAPE_HPP
