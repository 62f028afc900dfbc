#include "quadrk/shape.hpp"

#include <array>

namespace quadrk {

namespace {

constexpr std::array<std::pair<NormalFormTag, std::string_view>, 9> kTagNames{{
    {NormalFormTag::Rank0, "Rank0"},
    {NormalFormTag::R1_ColumnOnly, "R1_ColumnOnly"},
    {NormalFormTag::R1_RowOnly, "R1_RowOnly"},
    {NormalFormTag::R1_ColumnHalf, "R1_ColumnHalf"},
    {NormalFormTag::R2_TwoColumns, "R2_TwoColumns"},
    {NormalFormTag::R2_TwoRows, "R2_TwoRows"},
    {NormalFormTag::R2_Hook, "R2_Hook"},
    {NormalFormTag::R2_HookHalf, "R2_HookHalf"},
    {NormalFormTag::R2_Antisym, "R2_Antisym"},
}};

// Entry (i, j) vanishes in every coefficient matrix.
bool zero_entry(const std::vector<ConstMatrix>& all, std::size_t i, std::size_t j) {
  for (const auto& c : all) {
    if (!c(i, j).is_zero()) return false;
  }
  return true;
}

template <typename Allowed>
bool zero_outside(const DegOneMatrix& m, Allowed allowed) {
  const auto all = m.all_coefficients();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!allowed(i, j) && !zero_entry(all, i, j)) return false;
    }
  }
  return true;
}

bool entry_is_half(const DegOneMatrix& m, std::size_t i, std::size_t j) {
  if (!m.field().has_half()) return false;
  const Poly e = m.entry(i, j);
  return e.is_constant() && e.constant_term() == Scalar::half(m.field());
}

bool column_tail_zero(const DegOneMatrix& m, std::size_t from) {
  const auto all = m.all_coefficients();
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (!zero_entry(all, i, 0)) return false;
  }
  return true;
}

bool antisym_shape(const DegOneMatrix& m) {
  if (m.rows() < 3 || m.cols() < 3) return false;
  if (!zero_outside(m, [](std::size_t i, std::size_t j) { return i < 3 && j < 3; })) return false;
  for (const auto& c : m.all_coefficients()) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (!c(i, i).is_zero()) return false;
      for (std::size_t j = 0; j < i; ++j) {
        if (c(i, j) != -c(j, i)) return false;
      }
    }
  }
  const std::vector<Poly> below{m.entry(1, 0), m.entry(2, 0), m.entry(2, 1)};
  return linearly_independent(below);
}

}  // namespace

std::string_view to_string(NormalFormTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "?";
}

std::optional<NormalFormTag> parse_tag(std::string_view text) {
  for (const auto& [t, name] : kTagNames) {
    if (name == text) return t;
  }
  return std::nullopt;
}

std::size_t tag_rank(NormalFormTag tag) {
  switch (tag) {
    case NormalFormTag::Rank0:
      return 0;
    case NormalFormTag::R1_ColumnOnly:
    case NormalFormTag::R1_RowOnly:
    case NormalFormTag::R1_ColumnHalf:
      return 1;
    default:
      return 2;
  }
}

bool linearly_independent(std::span<const Poly> polys) {
  if (polys.empty()) return true;
  const FieldSpec f = polys[0].field();
  const std::size_t n = polys[0].nvars();
  ConstMatrix a(f, n + 1, polys.size());
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (polys[k].degree() > 1) fail(ErrorCode::PreconditionViolated, "independence test expects affine polynomials");
    a(0, k) = polys[k].constant_term();
    for (std::size_t v = 0; v < n; ++v) a(v + 1, k) = polys[k].linear_coefficient(v);
  }
  return rank(a) == polys.size();
}

bool shape_predicate(const DegOneMatrix& m, NormalFormTag tag) {
  switch (tag) {
    case NormalFormTag::Rank0:
      return m.is_zero();
    case NormalFormTag::R1_ColumnOnly:
      return zero_outside(m, [](std::size_t, std::size_t j) { return j == 0; });
    case NormalFormTag::R1_RowOnly:
      return zero_outside(m, [](std::size_t i, std::size_t) { return i == 0; });
    case NormalFormTag::R1_ColumnHalf:
      return m.rows() >= 2 && shape_predicate(m, NormalFormTag::R1_ColumnOnly) && entry_is_half(m, 1, 0) &&
             column_tail_zero(m, 2);
    case NormalFormTag::R2_TwoColumns:
      return zero_outside(m, [](std::size_t, std::size_t j) { return j < 2; });
    case NormalFormTag::R2_TwoRows:
      return zero_outside(m, [](std::size_t i, std::size_t) { return i < 2; });
    case NormalFormTag::R2_Hook:
      return zero_outside(m, [](std::size_t i, std::size_t j) { return i == 0 || j == 0; });
    case NormalFormTag::R2_HookHalf:
      return m.rows() >= 3 && shape_predicate(m, NormalFormTag::R2_Hook) && entry_is_half(m, 2, 0) &&
             column_tail_zero(m, 3);
    case NormalFormTag::R2_Antisym:
      return antisym_shape(m);
  }
  return false;
}

}  // namespace quadrk
