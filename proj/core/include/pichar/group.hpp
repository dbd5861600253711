#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "pichar/errors.hpp"
#include "pichar/numth.hpp"

namespace pichar {

/// Element id inside one group's element table. The identity is always id 0.
using Id = std::uint32_t;
/// Realization-specific element payload (residue, permutation image vector,
/// flattened matrix, tuple of component ids, coset leader, parent id...).
using ElemData = std::vector<std::uint32_t>;

struct ElemDataHash {
  std::size_t operator()(const ElemData& d) const {
    u64 h = 1469598103934665603ull;
    for (auto v : d) h = fnv1a_u64(v, h);
    return (std::size_t)h;
  }
};

/// Composition rule from which a Group's element table is generated.
class Realization {
 public:
  virtual ~Realization() = default;
  virtual ElemData identity() const = 0;
  virtual ElemData compose(const ElemData& a, const ElemData& b) const = 0;
  virtual std::vector<ElemData> generator_data() const = 0;
  /// Deterministic construction description (feeds cache fingerprints).
  virtual std::string describe() const = 0;
  /// Optional: full element list when already known (skips closure search).
  virtual std::vector<ElemData> enumerate_all() const { return {}; }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// Finite group with an explicit element table, generated breadth-first from
/// a Realization with per-level lexicographic tie-break, so element ids are
/// deterministic for a given construction. Immutable after build; analysis
/// results (classes, subgroup lists, tables) attach via a typed cache.
class Group : public std::enable_shared_from_this<Group> {
 public:
  static constexpr u64 kElementCap = 20000;

  static GroupPtr build(std::shared_ptr<const Realization> r);

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  u64 order() const { return elems_.size(); }
  Id identity() const { return 0; }
  Id mul(Id a, Id b) const {
    PICHAR_INTERNAL(a < elems_.size() && b < elems_.size(), "element id out of range");
    return id_of(real_->compose(elems_[a], elems_[b]));
  }
  Id inv(Id a) const { return inv_[a]; }
  Id pow(Id a, i64 e) const;
  /// g^x = x^{-1} g x.
  Id conj(Id g, Id x) const { return mul(mul(inv(x), g), x); }
  /// [a,b] = a^{-1} b^{-1} a b.
  Id commutator(Id a, Id b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  u64 element_order(Id a) const { return order_of_[a]; }
  u64 exponent() const { return exponent_; }
  bool is_abelian() const;

  const std::vector<Id>& generator_ids() const { return gens_; }
  const ElemData& data(Id a) const { return elems_[a]; }
  Id id_of(const ElemData& d) const {
    auto it = index_.find(d);
    PICHAR_CHECK(it != index_.end(), ErrorKind::NotFound, "element not in group");
    return it->second;
  }
  bool contains(const ElemData& d) const { return index_.count(d) != 0; }

  const Realization& realization() const { return *real_; }
  const std::string& describe() const { return describe_; }
  /// Cheap fingerprint used to detect cross-group mixups in character code.
  u64 digest() const { return fnv1a_u64(order(), fnv1a(describe_)); }

  /// Typed per-group memo: first computed value for a key wins; compute runs
  /// outside the lock so it may recurse into other keys.
  template <class T, class F>
  const T& analysis(const std::string& key, F&& compute) const {
    {
      std::lock_guard<std::mutex> lk(amu_);
      auto it = acache_.find(key);
      if (it != acache_.end()) return *static_cast<const T*>(it->second.get());
    }
    auto val = std::make_shared<T>(compute());
    std::lock_guard<std::mutex> lk(amu_);
    auto [it, inserted] = acache_.emplace(key, std::move(val));
    return *static_cast<const T*>(it->second.get());
  }

 private:
  Group() = default;

  std::shared_ptr<const Realization> real_;
  std::vector<ElemData> elems_;
  std::unordered_map<ElemData, Id, ElemDataHash> index_;
  std::vector<Id> gens_;
  std::vector<Id> inv_;
  std::vector<std::uint32_t> order_of_;
  u64 exponent_ = 1;
  std::string describe_;

  mutable std::mutex amu_;
  mutable std::unordered_map<std::string, std::shared_ptr<void>> acache_;
};

/// Subgroup generated by the seed ids; returns the sorted member-id list.
std::vector<Id> closure(const Group& G, std::vector<Id> seed);

/// Small generating set for an exact subgroup member list (sorted, containing
/// the identity); greedy and deterministic. Errors if the set is not closed.
std::vector<Id> small_generating_set(const Group& G, const std::vector<Id>& members);

GroupPtr cyclic_group(u64 n);
/// Generators as permutation image vectors over {0..deg-1}.
GroupPtr perm_group(std::vector<std::vector<std::uint32_t>> gens, std::string label = "");
/// Generators as flattened row-major dim x dim matrices over the p-element
/// field (p prime, entries in [0,p)).
GroupPtr matrix_group(u64 p, std::uint32_t dim, std::vector<std::vector<std::uint32_t>> gens,
                      std::string label = "");

struct ProductResult {
  GroupPtr group;
  std::vector<Id> n_members;  // embedded normal factor, sorted
  std::vector<Id> h_members;  // embedded complement, sorted
};
/// N ⋊ H. gen_images[i] is a full permutation of N's ids giving the
/// automorphism by which the i-th generator of H acts (h n h^{-1});
/// each is validated as an automorphism and the assignment is validated
/// to respect H's relations.
ProductResult semidirect_product(GroupPtr N, GroupPtr H,
                                 const std::vector<std::vector<Id>>& gen_images);
ProductResult direct_product(GroupPtr N, GroupPtr H);

struct QuotientResult {
  GroupPtr group;
  std::vector<Id> projection;  // parent id -> quotient id
};
/// G/N for N normal (caller-checked or checked here; errors if not normal).
QuotientResult quotient_group(GroupPtr G, const std::vector<Id>& normal_members);

/// The member set (sorted parent ids, must be closed, contain 0) as a Group
/// whose id i is the i-th sorted member.
GroupPtr subgroup_view(GroupPtr G, std::vector<Id> members);

/// The ambient group a subgroup view was built over, or nullptr if H is not a
/// subgroup view. Element data of a view is the singleton {parent id}.
const Group* view_parent(const Group& H);

}  // namespace pichar
