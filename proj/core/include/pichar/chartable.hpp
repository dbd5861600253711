#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pichar/classes.hpp"
#include "pichar/cyclotomic.hpp"
#include "pichar/group.hpp"

namespace pichar {

/// A class function on a fixed group: one exact cyclotomic value per
/// conjugacy class, indexed in the class order of conjugacy_classes(G).
/// group_digest ties the function to the group it was computed on so that
/// cross-group mixups fail fast instead of silently misindexing.
struct ClassFunction {
  u64 group_digest = 0;
  std::vector<Cyclotomic> values;

  const Cyclotomic& at(std::uint32_t cls) const {
    PICHAR_INTERNAL(cls < values.size(), "class index out of range");
    return values[cls];
  }
  bool operator==(const ClassFunction& o) const {
    return group_digest == o.group_digest && values == o.values;
  }
  bool operator!=(const ClassFunction& o) const { return !(*this == o); }
};

/// Characters are class functions produced by the table builder or by
/// character-preserving operations; same representation.
using Character = ClassFunction;

/// Wraps raw values as a class function on G (checks the length).
ClassFunction make_class_function(const Group& G, std::vector<Cyclotomic> values);

/// Value of f at an arbitrary element (via its class).
const Cyclotomic& value_at_element(const Group& G, const ClassFunction& f, Id g);

/// Degree: the value at the identity class, which must be a positive
/// rational integer.
u64 character_degree(const ClassFunction& f);

/// Character table: rows are the irreducible characters, sorted by degree and
/// then lexicographically on their value sequences under the fixed value
/// ordering (with rational 1 pulled to the front, so the all-ones row is
/// always row 0). Columns follow the class order of conjugacy_classes(G).
struct CharTable {
  u64 group_digest = 0;
  std::vector<Character> rows;

  std::uint32_t row_count() const { return static_cast<std::uint32_t>(rows.size()); }
};

/// Total order on cyclotomic values used for table-row sorting: rational 1 is
/// the minimum, everything else falls back to Cyclotomic::compare.
int table_value_compare(const Cyclotomic& a, const Cyclotomic& b);

/// Structure constants of one class-sum in the class algebra: the matrix
/// M[j][k] counting the ways a fixed element of class k factors as a product
/// (member of class i) * (member of class j). Row/column count is the class
/// count; cost is |class i| * class count group multiplications.
std::vector<std::vector<u64>> class_matrix(const Group& G, std::uint32_t i);

/// All structure constants a[i][j][k] at once (the full 3-index array).
/// Materializes class_count^3 integers; intended for small groups.
std::vector<std::vector<std::vector<u64>>> class_mult_coefficients(const Group& G);

/// The character table of G, computed by modular eigenspace splitting of the
/// class-sum matrices and exact value lifting, then certified exactly (both
/// orthogonality relations) before being returned. Cached on the group.
const CharTable& character_table(const Group& G);

/// Outcome of table verification: ok, or a named violation describing the
/// first check that failed (stable wording, suitable for reports).
struct TableVerification {
  bool ok = true;
  std::string violation;
};

/// Exact verification that t is the character table of G: shape, integrality,
/// conductor bounds, positive integral degrees with sum of squares |G|,
/// all-ones first row, first and second orthogonality, and canonical row
/// order. Never throws on a bad table; returns the named violation instead.
TableVerification verify_table(const Group& G, const CharTable& t);

/// Linear characters of G: the degree-1 rows of the character table, computed
/// without building the full table (table of the abelianization, inflated
/// along the projection). Sorted by the table row order; cached on the group.
const std::vector<Character>& linear_characters(const Group& G);

}  // namespace pichar
