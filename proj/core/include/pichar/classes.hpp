#pragma once

#include <vector>

#include "pichar/group.hpp"

namespace pichar {

/// Conjugacy-class data. Ordering is deterministic: the identity class first,
/// then increasing representative element order, then least representative
/// id; each class's representative is its least member.
struct ConjClasses {
  std::vector<Id> reps;
  std::vector<u64> sizes;
  std::vector<std::vector<Id>> members;  // sorted ids per class
  std::vector<std::uint32_t> class_of;   // element id -> class index
  std::vector<u64> rep_orders;
  std::vector<std::uint32_t> inverse_class;  // class of the inverses

  u64 count() const { return reps.size(); }
};

/// Computed once per group and cached on it.
const ConjClasses& conjugacy_classes(const Group& G);

/// Index of the class containing the k-th powers of class c (constant on the
/// class; k may be any integer).
std::uint32_t class_power(const Group& G, const ConjClasses& cc, std::uint32_t c, i64 k);

}  // namespace pichar
