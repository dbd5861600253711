#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pichar/chartable.hpp"
#include "pichar/classes.hpp"
#include "pichar/cyclotomic.hpp"
#include "pichar/group.hpp"
#include "pichar/subgroup.hpp"

namespace pichar {

/// Restriction of a class function on G to a subgroup given as a view of G.
/// The subgroup's own conjugacy classes index the result.
ClassFunction restrict_to(const Group& G, const ClassFunction& f, const Group& H);

/// Induction of a class function from a subgroup view H to G: the averaging
/// formula (1/|H|) sum over x in G of the zero-extension at x g x^{-1},
/// evaluated exactly classwise as sum over fusing H-classes of
/// theta(d) * |C_G(g)| / |C_H(rep_d)|.
ClassFunction induce_from(const Group& G, const Group& H, const ClassFunction& theta);

/// Exact inner product (1/|G|) sum_g a(g) conj(b(g)), computed classwise.
/// The result must be rational (true for differences of characters); errors
/// otherwise.
Rat inner_product(const Group& G, const ClassFunction& a, const ClassFunction& b);

/// One irreducible constituent: a row index of character_table(G) and its
/// multiplicity.
struct Constituent {
  std::uint32_t row = 0;
  u64 multiplicity = 0;
  bool operator==(const Constituent& o) const {
    return row == o.row && multiplicity == o.multiplicity;
  }
};

/// Decomposition of f over the irreducible rows, rows ascending, zero
/// multiplicities omitted. Every multiplicity must be a nonnegative integer
/// (errors otherwise); the decomposition is exact by row orthonormality.
std::vector<Constituent> constituents(const Group& G, const ClassFunction& f);

/// Pointwise product of class functions.
ClassFunction cf_product(const Group& G, const ClassFunction& a, const ClassFunction& b);

/// Inflation along a quotient projection (parent id -> quotient id, as
/// returned by quotient_group): the composite of f with the projection.
ClassFunction inflate(const Group& G, const std::vector<Id>& projection, const Group& Q,
                      const ClassFunction& f);

/// Kernel of a class function: the sorted members of the classes where the
/// value equals the value at the identity. For characters this is a normal
/// subgroup.
Members char_kernel(const Group& G, const ClassFunction& f);

/// Determinant character of chi: the linear character whose value at g is
/// the product of the eigenvalue roots of unity of chi on the cyclic group
/// generated by g. The eigenvalue multiset at each class is reconstructed
/// exactly from the power values of chi and certified against chi's value;
/// the result is certified to be a linear character of G. Errors on
/// reconstruction inconsistency (the input is not a character).
Character det_character(const Group& G, const Character& chi);

/// Multiplicative order of a linear character (least k with lambda^k
/// principal). Errors if some value is not a root of unity.
u64 determinantal_order(const Group& G, const Character& lambda);

/// Inertia group of a class function theta on a normal subgroup view N: the
/// sorted member set of {g in G : theta(g n g^{-1}) = theta(n) for all n}.
/// Always contains N's members; errors if N is not normal in G.
Members inertia_group(const Group& G, const Group& N, const ClassFunction& theta);

/// Index of the first row of character_table(G), in canonical table order,
/// whose restriction to the normal subgroup view N equals theta exactly;
/// empty if theta does not extend.
std::optional<std::uint32_t> extends_to(const Group& G, const Group& N,
                                        const ClassFunction& theta);

}  // namespace pichar
