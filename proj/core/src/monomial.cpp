#include "pichar/monomial.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "descent_util.hpp"
#include "pichar/classes.hpp"
#include "pichar/subgroup_enum.hpp"

namespace pichar {
namespace {

// Internally the whole group is represented by the empty member list (see
// descent_util.hpp), so memo keys stay small.
using NodeKey = std::pair<Members, std::uint32_t>;  // (subgroup, row index)
using PrimNode = std::tuple<Members, std::uint32_t, u64>;  // + degree

bool key_less(const NodeKey& a, const NodeKey& b) {
  if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
  return a < b;
}

bool node_less(const PrimNode& a, const PrimNode& b) {
  if (std::get<0>(a).size() != std::get<0>(b).size())
    return std::get<0>(a).size() < std::get<0>(b).size();
  return a < b;
}

/// Result of the inducer descent below one pair (H, theta).
struct DescentInfo {
  u64 degree = 0;
  bool primitive = true;
  bool monomial = false;
  std::optional<NodeKey> witness;     // least linear leaf, if any
  std::vector<PrimNode> prim_nodes;   // primitive pairs reachable, canonical subgroups
};

/// All inductions from one maximal subgroup instance at one constituent
/// degree: (row of the canonical child's table, induced row of the parent's
/// table or empty when reducible).
struct EdgeData {
  Members child;
  std::vector<std::pair<std::uint32_t, std::optional<std::uint32_t>>> rows;
};

struct DescentStore {
  std::mutex mu;
  std::map<NodeKey, std::shared_ptr<const DescentInfo>> memo;
  std::map<std::tuple<Members, Members, u64>, std::shared_ptr<const EdgeData>> edges;
};

DescentStore& descent_store(const Group& G) {
  const std::shared_ptr<DescentStore>& p = G.analysis<std::shared_ptr<DescentStore>>(
      "monomial_descent_store", [] { return std::make_shared<DescentStore>(); });
  return *p;
}

std::optional<std::uint32_t> find_row_exact(const CharTable& t, const ClassFunction& f) {
  for (std::uint32_t i = 0; i < t.row_count(); ++i)
    if (t.rows[i].values == f.values) return i;
  return std::nullopt;
}

/// Descent engine bound to one ambient group.
class Descent {
 public:
  Descent(const Group& G, DescentStore& store)
      : g_(G), store_(store), vs_(detail::view_store(G)) {}

  GroupPtr view_of(const Members& m) { return detail::view_of(g_, vs_, m); }

  const std::vector<Id>& back_of(const Members& m) { return detail::back_of(g_, vs_, m); }

  Id to_ambient(const Group& view, Id local) const {
    return detail::to_ambient(g_, view, local);
  }

  /// The character behind a node key: full-table row for nonlinear degrees,
  /// linear-prefix row (the same index space) for degree one.
  const Character& node_character(const Members& m, std::uint32_t row, u64 deg) {
    GroupPtr v = view_of(m);
    if (deg == 1) {
      const std::vector<Character>& lins = linear_characters(*v);
      PICHAR_INTERNAL(row < lins.size(), "linear row index out of range");
      return lins[row];
    }
    const CharTable& t = character_table(*v);
    PICHAR_INTERNAL(row < t.row_count(), "table row index out of range");
    return t.rows[row];
  }

  std::shared_ptr<const EdgeData> edge(const Members& parent, const GroupPtr& view_parent_group,
                                       const Members& m_amb, u64 dprime) {
    std::tuple<Members, Members, u64> key{parent, m_amb, dprime};
    {
      std::lock_guard<std::mutex> lk(store_.mu);
      auto it = store_.edges.find(key);
      if (it != store_.edges.end()) return it->second;
    }
    auto out = std::make_shared<EdgeData>();
    CanonicalSubgroup can = conjugacy_canonical_subgroup(g_, m_amb);
    out->child = can.members;
    GroupPtr vm = view_of(can.members);

    // Local instance of the subgroup inside the parent view, for induction.
    const std::vector<Id>& back_parent = back_of(parent);
    Members mloc;
    mloc.reserve(m_amb.size());
    for (Id a : m_amb) {
      PICHAR_INTERNAL(back_parent[a] != static_cast<Id>(g_.order()),
                      "maximal subgroup member missing from the parent view");
      mloc.push_back(back_parent[a]);
    }
    std::sort(mloc.begin(), mloc.end());
    GroupPtr vmloc = subgroup_view(view_parent_group, mloc);

    // Class fusion from the local instance to the canonical copy: a local
    // element a corresponds to conjugator^{-1} a conjugator.
    const ConjClasses& lc = conjugacy_classes(*vmloc);
    const ConjClasses& cc = conjugacy_classes(*vm);
    const std::vector<Id>& back_m = back_of(can.members);
    std::vector<std::uint32_t> fus(lc.count());
    for (std::uint32_t d = 0; d < lc.count(); ++d) {
      Id a = to_ambient(*view_parent_group, vmloc->data(lc.reps[d])[0]);
      Id c = g_.conj(a, can.conjugator);
      PICHAR_INTERNAL(back_m[c] != static_cast<Id>(g_.order()),
                      "conjugated element missing from the canonical subgroup");
      fus[d] = cc.class_of[back_m[c]];
    }

    const CharTable& tp = character_table(*view_parent_group);
    auto try_candidate = [&](std::uint32_t row, const Character& psi) {
      std::vector<Cyclotomic> vals;
      vals.reserve(lc.count());
      for (std::uint32_t d = 0; d < lc.count(); ++d) vals.push_back(psi.values[fus[d]]);
      ClassFunction local = make_class_function(*vmloc, vals);
      ClassFunction ind = induce_from(*view_parent_group, *vmloc, local);
      out->rows.emplace_back(row, find_row_exact(tp, ind));
    };
    if (dprime == 1) {
      const std::vector<Character>& lins = linear_characters(*vm);
      for (std::uint32_t j = 0; j < lins.size(); ++j) try_candidate(j, lins[j]);
    } else {
      const CharTable& tm = character_table(*vm);
      for (std::uint32_t j = 0; j < tm.row_count(); ++j)
        if (character_degree(tm.rows[j]) == dprime) try_candidate(j, tm.rows[j]);
    }

    std::lock_guard<std::mutex> lk(store_.mu);
    return store_.edges.emplace(std::move(key), std::move(out)).first->second;
  }

  std::shared_ptr<const DescentInfo> descend(const NodeKey& key, u64 deg) {
    {
      std::lock_guard<std::mutex> lk(store_.mu);
      auto it = store_.memo.find(key);
      if (it != store_.memo.end()) return it->second;
    }
    auto info = std::make_shared<DescentInfo>();
    info->degree = deg;
    info->monomial = (deg == 1);
    if (deg == 1) info->witness = key;
    if (deg > 1) {
      GroupPtr vc = view_of(key.first);
      const std::vector<Members>& maxs = maximal_subgroups(*vc);
      for (const Members& mloc : maxs) {
        u64 index = vc->order() / mloc.size();
        if (deg % index != 0) continue;
        Members m_amb;
        m_amb.reserve(mloc.size());
        for (Id v : mloc) m_amb.push_back(to_ambient(*vc, v));
        std::sort(m_amb.begin(), m_amb.end());
        std::shared_ptr<const EdgeData> ed = edge(key.first, vc, m_amb, deg / index);
        for (const auto& [row, target] : ed->rows) {
          if (!target || *target != key.second) continue;
          info->primitive = false;
          std::shared_ptr<const DescentInfo> child = descend({ed->child, row}, deg / index);
          info->monomial = info->monomial || child->monomial;
          if (child->witness &&
              (!info->witness || key_less(*child->witness, *info->witness)))
            info->witness = child->witness;
          info->prim_nodes.insert(info->prim_nodes.end(), child->prim_nodes.begin(),
                                  child->prim_nodes.end());
        }
      }
    }
    if (info->primitive) {
      info->prim_nodes = {{key.first, key.second, deg}};
    } else {
      std::sort(info->prim_nodes.begin(), info->prim_nodes.end(), node_less);
      info->prim_nodes.erase(std::unique(info->prim_nodes.begin(), info->prim_nodes.end()),
                             info->prim_nodes.end());
    }
    std::lock_guard<std::mutex> lk(store_.mu);
    return store_.memo.emplace(key, std::move(info)).first->second;
  }

 private:
  const Group& g_;
  DescentStore& store_;
  detail::ViewStore& vs_;
};

std::uint32_t row_index_of(const Group& G, const Character& chi) {
  PICHAR_CHECK(chi.group_digest == G.digest(), ErrorKind::InvalidInput,
               "character belongs to a different group");
  std::optional<std::uint32_t> row = find_row_exact(character_table(G), chi);
  PICHAR_CHECK(row.has_value(), ErrorKind::InvalidInput,
               "character is not an irreducible row of the group's table");
  return *row;
}

std::shared_ptr<const DescentInfo> root_info(const Group& G, std::uint32_t row) {
  Descent d(G, descent_store(G));
  return d.descend({Members{}, row}, character_degree(character_table(G).rows[row]));
}

bool all_nodes_linear(const DescentInfo& info) {
  for (const PrimNode& n : info.prim_nodes)
    if (std::get<2>(n) != 1) return false;
  return true;
}

Members full_members(const Group& G) {
  Members all(G.order());
  std::iota(all.begin(), all.end(), Id{0});
  return all;
}

/// Least (members, value-vector) pair in the conjugation orbit of the pair
/// (H, theta), as a node key. Conjugating by g sends (H, theta) to
/// (g^{-1} H g, h -> theta(g h g^{-1})); the orbit is closed under the
/// ambient group's generators. Used to deduplicate inducer listings.
NodeKey canonical_pair(const Group& G, Descent& desc, const Members& members, std::uint32_t row,
                       u64 deg) {
  GroupPtr v = desc.view_of(members);
  const ConjClasses& cc = conjugacy_classes(*v);
  const Character& theta = desc.node_character(members, row, deg);

  // State: members ascending, with theta's value at each member (as a
  // serialized string for ordering and dedup).
  using State = std::pair<Members, std::vector<std::string>>;
  State start;
  start.first = members;
  start.second.reserve(members.size());
  const std::vector<Id>& back = desc.back_of(members);
  for (Id a : members) start.second.push_back(theta.values[cc.class_of[back[a]]].to_string());

  std::set<State> seen{start};
  std::vector<const State*> queue{&*seen.begin()};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const State cur = *queue[qi];
    for (Id g : G.generator_ids()) {
      std::vector<std::pair<Id, std::string>> moved;
      moved.reserve(cur.first.size());
      for (std::size_t i = 0; i < cur.first.size(); ++i)
        moved.emplace_back(G.conj(cur.first[i], g), cur.second[i]);
      std::sort(moved.begin(), moved.end());
      State nxt;
      nxt.first.reserve(moved.size());
      nxt.second.reserve(moved.size());
      for (auto& [id, val] : moved) {
        nxt.first.push_back(id);
        nxt.second.push_back(std::move(val));
      }
      auto [it, fresh] = seen.insert(std::move(nxt));
      if (fresh) queue.push_back(&*it);
    }
  }

  const State& best = *seen.begin();
  PICHAR_INTERNAL(best.first == members,
                  "pair canonicalization moved an already-canonical subgroup");
  // Recover the row index of the least transported values.
  std::vector<std::string> class_vals(cc.count());
  for (std::uint32_t c = 0; c < cc.count(); ++c) {
    Id amb = v->order() == G.order() ? cc.reps[c] : v->data(cc.reps[c])[0];
    std::size_t pos = std::lower_bound(members.begin(), members.end(), amb) - members.begin();
    class_vals[c] = best.second[pos];
  }
  auto matches = [&](const Character& cand) {
    for (std::uint32_t c = 0; c < cc.count(); ++c)
      if (cand.values[c].to_string() != class_vals[c]) return false;
    return true;
  };
  if (deg == 1) {
    const std::vector<Character>& lins = linear_characters(*v);
    for (std::uint32_t j = 0; j < lins.size(); ++j)
      if (matches(lins[j])) return {members, j};
  } else {
    const CharTable& t = character_table(*v);
    for (std::uint32_t j = 0; j < t.row_count(); ++j)
      if (matches(t.rows[j])) return {members, j};
  }
  PICHAR_INTERNAL(false, "conjugated character is not a row of the subgroup's table");
  return {members, row};
}

}  // namespace

const MonomialityReport& monomiality_report(const Group& G) {
  return G.analysis<MonomialityReport>("monomiality_report", [&G]() {
    const CharTable& t = character_table(G);
    MonomialityReport rep;
    rep.m_group = true;
    rep.super_m_group = true;
    for (std::uint32_t i = 0; i < t.row_count(); ++i) {
      std::shared_ptr<const DescentInfo> info = root_info(G, i);
      RowMonomiality r;
      r.degree = info->degree;
      r.monomial = info->monomial;
      r.primitive = info->primitive;
      r.super_monomial = all_nodes_linear(*info);
      if (info->witness) {
        r.witness = *info->witness;
        if (r.witness->first.empty()) r.witness->first = full_members(G);
      }
      rep.m_group = rep.m_group && r.monomial;
      rep.super_m_group = rep.super_m_group && r.super_monomial;
      rep.rows.push_back(std::move(r));
    }
    return rep;
  });
}

bool is_monomial(const Group& G, const Character& chi) {
  return root_info(G, row_index_of(G, chi))->monomial;
}

bool is_primitive(const Group& G, const Character& chi) {
  return root_info(G, row_index_of(G, chi))->primitive;
}

bool is_super_monomial(const Group& G, const Character& chi) {
  return all_nodes_linear(*root_info(G, row_index_of(G, chi)));
}

std::optional<MonomialWitness> monomial_witness(const Group& G, const Character& chi) {
  std::uint32_t row = row_index_of(G, chi);
  std::shared_ptr<const DescentInfo> info = root_info(G, row);
  if (!info->monomial) return std::nullopt;
  PICHAR_INTERNAL(info->witness.has_value(), "monomial without a linear leaf");
  const NodeKey& w = *info->witness;
  if (w.first.empty()) return MonomialWitness{full_members(G), chi};
  Descent d(G, descent_store(G));
  GroupPtr vh = d.view_of(w.first);
  const Character& lambda = d.node_character(w.first, w.second, 1);
  PICHAR_CHECK(induce_from(G, *vh, lambda) == chi, ErrorKind::Certification,
               "monomial witness failed re-verification by explicit induction");
  return MonomialWitness{w.first, lambda};
}

std::vector<InducerNode> primitive_inducers(const Group& G, const Character& chi) {
  std::uint32_t row = row_index_of(G, chi);
  std::shared_ptr<const DescentInfo> info = root_info(G, row);
  Descent d(G, descent_store(G));

  // Deduplicate by pair conjugacy: conjugate inducing pairs share one
  // canonical representative.
  std::set<NodeKey> keys;
  std::map<NodeKey, NodeKey> canon_cache;
  std::map<NodeKey, u64> degrees;
  for (const PrimNode& n : info->prim_nodes) {
    NodeKey raw{std::get<0>(n), std::get<1>(n)};
    u64 deg = std::get<2>(n);
    NodeKey can = raw;
    if (!raw.first.empty()) {
      auto it = canon_cache.find(raw);
      can = (it != canon_cache.end()) ? it->second
                                      : canonical_pair(G, d, raw.first, raw.second, deg);
      canon_cache.emplace(raw, can);
    }
    keys.insert(can);
    degrees.emplace(can, deg);
  }

  std::vector<NodeKey> ordered(keys.begin(), keys.end());
  std::sort(ordered.begin(), ordered.end(), key_less);
  std::vector<InducerNode> out;
  out.reserve(ordered.size());
  for (const NodeKey& k : ordered) {
    InducerNode node;
    node.primitive_flag = true;
    if (k.first.empty()) {
      node.subgroup = full_members(G);
      node.character = chi;
    } else {
      node.subgroup = k.first;
      node.character = d.node_character(k.first, k.second, degrees.at(k));
      GroupPtr vh = d.view_of(k.first);
      PICHAR_CHECK(induce_from(G, *vh, node.character) == chi, ErrorKind::Certification,
                   "primitive inducer failed re-verification by explicit induction");
    }
    out.push_back(std::move(node));
  }
  PICHAR_INTERNAL(!out.empty(), "every irreducible character has a primitive inducer");
  return out;
}

bool is_super_monomial_by_all_inducers(const Group& G, const Character& chi) {
  PICHAR_CHECK(chi.group_digest == G.digest(), ErrorKind::InvalidInput,
               "character belongs to a different group");
  // Tier gate first: above the exhaustive tier this path is unavailable and
  // must error without computing the ambient character table.
  const std::vector<Members>& subs = subgroups_up_to_conjugacy(G);
  std::uint32_t row = row_index_of(G, chi);
  u64 deg = character_degree(chi);
  Descent d(G, descent_store(G));
  for (const Members& h : subs) {
    u64 index = G.order() / h.size();
    if (deg % index != 0) continue;
    u64 dprime = deg / index;
    if (index == 1) {
      // The pair (G, chi) itself.
      if (!root_info(G, row)->monomial) return false;
      continue;
    }
    GroupPtr vh = d.view_of(h);
    auto consider = [&](std::uint32_t j, const Character& theta) {
      if (induce_from(G, *vh, theta) != chi) return true;
      return d.descend({h, j}, dprime)->monomial;
    };
    if (dprime == 1) {
      const std::vector<Character>& lins = linear_characters(*vh);
      for (std::uint32_t j = 0; j < lins.size(); ++j)
        if (!consider(j, lins[j])) return false;
    } else {
      const CharTable& t = character_table(*vh);
      for (std::uint32_t j = 0; j < t.row_count(); ++j)
        if (character_degree(t.rows[j]) == dprime && !consider(j, t.rows[j])) return false;
    }
  }
  return true;
}

bool is_M_group(const Group& G) { return monomiality_report(G).m_group; }

bool is_super_M_group(const Group& G) { return monomiality_report(G).super_m_group; }

}  // namespace pichar
