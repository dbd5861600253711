#pragma once

#include <vector>

#include "pichar/group.hpp"

namespace pichar {

/// A subgroup is represented by its sorted member-id vector (always
/// containing the identity id 0) relative to an ambient group.
using Members = std::vector<Id>;

/// Subgroup generated by a set of elements. Uses a greedily chosen small
/// generating subset, so cost stays near |result| * log2|result| products
/// even for large seed sets.
Members generated_subgroup(const Group& G, const Members& seed);

bool is_subgroup_members(const Group& G, const Members& m);
bool is_normal(const Group& G, const Members& m);

/// Least normal subgroup containing the seed elements.
Members normal_closure(const Group& G, const Members& seed);

Members centralizer(const Group& G, Id g);
Members center(const Group& G);

/// Derived subgroup [G,G].
Members derived_subgroup(const Group& G);
/// Derived subgroup of a subgroup, computed inside the ambient group.
Members derived_subgroup_of(const Group& G, const Members& m);

/// G > G' > G'' > ... until stable; the stable tail appears once.
std::vector<Members> derived_series(const Group& G);
bool is_solvable(const Group& G);

/// Largest normal p-subgroup.
Members p_core(const Group& G, u64 p);
/// Largest normal nilpotent subgroup (join of the p-cores).
Members fitting_subgroup(const Group& G);
bool is_nilpotent(const Group& G);
/// Number of Fitting factors needed to exhaust G. Requires solvability.
u64 fitting_height(const Group& G);

/// All normal subgroups, sorted by (order, member vector). Cached on G.
const std::vector<Members>& normal_subgroups(const Group& G);
std::vector<Members> minimal_normal_subgroups(const Group& G);
std::vector<Members> maximal_normal_subgroups(const Group& G);

/// True iff G is a Frobenius group with the given proper nontrivial normal
/// subgroup as kernel (every nonidentity kernel element has its centralizer
/// inside the kernel).
bool is_frobenius_with_kernel(const Group& G, const Members& kernel);

}  // namespace pichar
