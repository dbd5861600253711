#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pichar/charops.hpp"
#include "pichar/chartable.hpp"
#include "pichar/group.hpp"
#include "pichar/subgroup.hpp"

namespace pichar {

/// One inducing pair (H, theta): a subgroup given by its canonical conjugacy
/// representative and an irreducible character on the view of that subgroup
/// whose induction to the ambient group equals the target character exactly.
struct InducerNode {
  Members subgroup;
  Character character;
  bool primitive_flag = false;
};

/// A verified monomial witness: a subgroup and a linear character of its
/// view whose induction equals the target character exactly.
struct MonomialWitness {
  Members subgroup;
  Character linear;
};

/// Monomiality facts for one irreducible row.
struct RowMonomiality {
  u64 degree = 0;
  bool monomial = false;
  bool primitive = false;
  bool super_monomial = false;
  /// Linear leaf backing `monomial`: canonical subgroup members plus the
  /// index of the linear character on that subgroup (least subgroup by
  /// (size, members), then least index). Present iff monomial.
  std::optional<std::pair<Members, std::uint32_t>> witness;
};

/// Facts for every irreducible row of character_table(G); cached on G.
struct MonomialityReport {
  std::vector<RowMonomiality> rows;
  bool m_group = false;
  bool super_m_group = false;
};
const MonomialityReport& monomiality_report(const Group& G);

/// True iff chi is induced from a linear character of some subgroup
/// (possibly chi itself when linear). chi must equal a row of
/// character_table(G); errors otherwise. Search: recursive descent through
/// maximal subgroups — every proper inducing pair factors through a maximal
/// subgroup with irreducible intermediate induction — memoized on canonical
/// (subgroup, row) keys.
bool is_monomial(const Group& G, const Character& chi);

/// True iff no proper pair (H, theta) induces chi.
bool is_primitive(const Group& G, const Character& chi);

/// True iff every primitive character inducing chi is linear.
bool is_super_monomial(const Group& G, const Character& chi);

/// The witness behind is_monomial, re-verified by explicit induction before
/// being returned; empty iff chi is not monomial.
std::optional<MonomialWitness> monomial_witness(const Group& G, const Character& chi);

/// Every primitive inducing pair reachable by full descent, one canonical
/// representative per conjugacy orbit, each re-verified by explicit
/// induction, ordered by (subgroup size, members, character index).
/// Contains (G, chi) itself iff chi is primitive; never empty.
std::vector<InducerNode> primitive_inducers(const Group& G, const Character& chi);

/// Second evaluation path for super-monomiality: true iff every pair
/// (H, theta) over all subgroups of G with theta^G = chi has theta monomial.
/// Exhaustive tier only (errors above it). Must agree with
/// is_super_monomial; checks and tests enforce the agreement.
bool is_super_monomial_by_all_inducers(const Group& G, const Character& chi);

/// True iff every irreducible character of G is monomial.
bool is_M_group(const Group& G);

/// True iff every irreducible character of G is super-monomial.
bool is_super_M_group(const Group& G);

}  // namespace pichar
