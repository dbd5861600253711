#pragma once

#include <vector>

#include "pichar/group.hpp"
#include "pichar/subgroup.hpp"

namespace pichar {

/// Largest group order for which exhaustive subgroup enumeration is offered.
inline constexpr u64 kExhaustiveTier = 2000;

struct CanonicalSubgroup {
  Members members;  // least member vector in the conjugacy orbit
  Id conjugator;    // x with members == x^{-1} (input) x elementwise
};

/// Canonical representative of the subgroup's conjugacy class.
CanonicalSubgroup conjugacy_canonical_subgroup(const Group& G, const Members& m);

/// Full conjugacy orbit, sorted by member vector.
std::vector<Members> subgroup_conjugates(const Group& G, const Members& m);

/// Every subgroup (no dedup), sorted by (order, members). Exhaustive tier
/// only; cached on G.
const std::vector<Members>& all_subgroups(const Group& G);

/// One canonical representative per conjugacy class of subgroups, sorted by
/// (order, members). Exhaustive tier only; cached on G.
const std::vector<Members>& subgroups_up_to_conjugacy(const Group& G);

/// Complete list of all maximal subgroups, sorted by (order descending,
/// members). Works above the exhaustive tier whenever every chief factor
/// encountered is elementary abelian (always for solvable groups); cached.
const std::vector<Members>& maximal_subgroups(const Group& G);

/// All complements of an elementary abelian normal subgroup N in G (empty if
/// none). Exact: solves the multiplicative-section equations over F_p.
std::vector<Members> complements_of_elementary_abelian(const Group& G, const Members& N);

}  // namespace pichar
