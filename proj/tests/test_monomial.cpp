// Tests for monomiality analysis: the maximal-subgroup descent behind
// is_monomial / is_primitive / is_super_monomial is compared row by row
// against exhaustive searches that enumerate every subgroup and use the
// raw averaging definition of induction (no Frobenius bookkeeping, no
// descent) — plus frozen structural facts for the named small groups.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "common_groups.hpp"
#include "pichar/charops.hpp"
#include "pichar/chartable.hpp"
#include "pichar/classes.hpp"
#include "pichar/group.hpp"
#include "pichar/monomial.hpp"
#include "pichar/subgroup.hpp"
#include "pichar/subgroup_enum.hpp"
#include "test_oracles.hpp"

using namespace pichar;
using testoracle::induced_by_definition;
using testoracle::members_of_order_dividing;

namespace {

GroupPtr a4() { return perm_group({{1, 2, 0, 3}, {1, 0, 3, 2}}, "a4"); }
GroupPtr d8() { return perm_group({{1, 2, 3, 0}, {1, 0, 3, 2}}, "d8"); }

std::vector<u64> degrees_of(const CharTable& t) {
  std::vector<u64> d;
  for (const Character& r : t.rows) d.push_back(character_degree(r));
  return d;
}

/// Every subgroup of G together with a live view (held so analysis caches
/// survive for the duration of the oracle run).
std::vector<std::pair<Members, GroupPtr>> all_subgroup_views(GroupPtr gp) {
  std::vector<std::pair<Members, GroupPtr>> out;
  for (const Members& m : all_subgroups(*gp))
    if (m.size() < gp->order()) out.emplace_back(m, subgroup_view(gp, m));
  return out;
}

/// Exhaustive monomiality: scan every proper subgroup of index chi(1) and
/// every linear character of it, inducing by the averaging definition.
/// Returns the least inducing subgroup size when monomial.
std::optional<u64> oracle_monomial_min_size(
    GroupPtr gp, const std::vector<std::pair<Members, GroupPtr>>& subs, const Character& chi) {
  const Group& G = *gp;
  u64 deg = character_degree(chi);
  if (deg == 1) return G.order();  // chi induces itself from G
  for (const auto& [m, h] : subs) {  // sorted by (order, members): first hit is least
    if (m.size() * deg != G.order()) continue;
    for (const Character& lam : linear_characters(*h))
      if (induced_by_definition(G, *h, lam) == chi) return m.size();
  }
  return std::nullopt;
}

/// Exhaustive primitivity: chi is primitive iff no proper pair induces it.
bool oracle_primitive(GroupPtr gp, const std::vector<std::pair<Members, GroupPtr>>& subs,
                      const Character& chi) {
  const Group& G = *gp;
  u64 deg = character_degree(chi);
  for (const auto& [m, h] : subs) {
    u64 index = G.order() / m.size();
    if (deg % index != 0) continue;
    u64 dprime = deg / index;
    for (const Character& th : character_table(*h).rows)
      if (character_degree(th) == dprime && induced_by_definition(G, *h, th) == chi) return false;
  }
  return true;
}

/// Full row-by-row comparison of the descent against the exhaustive oracles,
/// plus the invariants that hold on every group: linear rows are monomial,
/// primitive and super-monomial; super-monomial implies monomial; witnesses
/// and inducer nodes replay exactly under the averaging definition; the two
/// super-monomiality evaluation paths agree; inducer listings are canonical
/// and ordered.
void check_group(GroupPtr gp) {
  const Group& G = *gp;
  const CharTable& t = character_table(G);
  const MonomialityReport& rep = monomiality_report(G);
  REQUIRE(rep.rows.size() == t.row_count());
  CHECK(&monomiality_report(G) == &rep);  // cached, stable address

  std::vector<std::pair<Members, GroupPtr>> subs = all_subgroup_views(gp);
  bool all_monomial = true;
  bool all_super = true;

  for (std::uint32_t i = 0; i < t.row_count(); ++i) {
    const Character& chi = t.rows[i];
    INFO("row ", i, " of ", G.describe());
    const RowMonomiality& r = rep.rows[i];
    CHECK(r.degree == character_degree(chi));

    std::optional<u64> expect = oracle_monomial_min_size(gp, subs, chi);
    CHECK(r.monomial == expect.has_value());
    CHECK(is_monomial(G, chi) == expect.has_value());
    all_monomial = all_monomial && expect.has_value();

    bool expect_prim = oracle_primitive(gp, subs, chi);
    CHECK(r.primitive == expect_prim);
    CHECK(is_primitive(G, chi) == expect_prim);

    std::optional<MonomialWitness> w = monomial_witness(G, chi);
    REQUIRE(w.has_value() == expect.has_value());
    CHECK(r.witness.has_value() == expect.has_value());
    if (w) {
      CHECK(w->subgroup.size() == *expect);  // least inducing subgroup size
      CHECK(character_degree(w->linear) == 1);
      if (w->subgroup.size() == G.order()) {
        CHECK(w->linear == chi);
      } else {
        CHECK(w->subgroup == conjugacy_canonical_subgroup(G, w->subgroup).members);
        GroupPtr h = subgroup_view(gp, w->subgroup);
        CHECK(induced_by_definition(G, *h, w->linear) == chi);
      }
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->first == w->subgroup);
    }

    bool sup = is_super_monomial(G, chi);
    CHECK(r.super_monomial == sup);
    if (sup) CHECK(r.monomial);  // super-monomial implies monomial
    CHECK(sup == is_super_monomial_by_all_inducers(G, chi));
    all_super = all_super && sup;

    if (r.degree == 1) {
      CHECK(r.monomial);
      CHECK(r.primitive);
      CHECK(r.super_monomial);
      REQUIRE(r.witness.has_value());
      CHECK(r.witness->first.size() == G.order());
    }

    std::vector<InducerNode> nodes = primitive_inducers(G, chi);
    REQUIRE(!nodes.empty());
    bool has_self = false;
    bool all_linear = true;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const InducerNode& n = nodes[k];
      CHECK(n.primitive_flag);
      all_linear = all_linear && character_degree(n.character) == 1;
      if (k > 0) {  // ordered by (size, members)
        CHECK(nodes[k - 1].subgroup.size() <= n.subgroup.size());
        if (nodes[k - 1].subgroup.size() == n.subgroup.size())
          CHECK(nodes[k - 1].subgroup <= n.subgroup);
      }
      if (n.subgroup.size() == G.order()) {
        has_self = true;
        CHECK(n.character == chi);
      } else {
        CHECK(n.subgroup == conjugacy_canonical_subgroup(G, n.subgroup).members);
        GroupPtr h = subgroup_view(gp, n.subgroup);
        CHECK(induced_by_definition(G, *h, n.character) == chi);
        // each node's character is primitive on its own subgroup
        CHECK(is_primitive(*h, n.character));
      }
    }
    CHECK(has_self == r.primitive);
    CHECK(all_linear == sup);  // primary definition of super-monomial
  }

  CHECK(is_M_group(G) == all_monomial);
  CHECK(rep.m_group == all_monomial);
  CHECK(is_super_M_group(G) == all_super);
  CHECK(rep.super_m_group == all_super);
}

}  // namespace

TEST_CASE("descent vs exhaustive search: symmetric group on three points") {
  GroupPtr s = testgroups::s3();
  check_group(s);
  const CharTable& t = character_table(*s);
  REQUIRE(degrees_of(t) == std::vector<u64>{1, 1, 2});
  const MonomialityReport& rep = monomiality_report(*s);
  CHECK(rep.m_group);
  CHECK(rep.super_m_group);

  // the degree-2 row is induced from the rotation subgroup and nowhere else
  Members a3 = members_of_order_dividing(*s, 3);
  REQUIRE(a3.size() == 3);
  CHECK(!rep.rows[2].primitive);
  REQUIRE(rep.rows[2].witness.has_value());
  CHECK(rep.rows[2].witness->first == a3);

  // its two inducing linears are conjugate, so the listing has one node
  std::vector<InducerNode> nodes = primitive_inducers(*s, t.rows[2]);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].subgroup == a3);
  CHECK(character_degree(nodes[0].character) == 1);
}

TEST_CASE("descent vs exhaustive search: quaternion and dihedral groups of order eight") {
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr q = testgroups::q8(gl);
  REQUIRE(q->order() == 8);
  check_group(q);
  REQUIRE(degrees_of(character_table(*q)) == std::vector<u64>{1, 1, 1, 1, 2});
  CHECK(is_M_group(*q));
  CHECK(is_super_M_group(*q));

  // the degree-2 witness is the least cyclic subgroup of order 4
  const MonomialityReport& rep = monomiality_report(*q);
  REQUIRE(rep.rows[4].witness.has_value());
  std::optional<Members> least_c4;
  for (Id a = 0; a < q->order(); ++a) {
    if (q->element_order(a) != 4) continue;
    Members c = closure(*q, {a});
    if (!least_c4 || c < *least_c4) least_c4 = c;
  }
  REQUIRE(least_c4.has_value());
  CHECK(rep.rows[4].witness->first == *least_c4);

  GroupPtr d = d8();
  REQUIRE(d->order() == 8);
  check_group(d);
  CHECK(is_M_group(*d));
  CHECK(is_super_M_group(*d));
}

TEST_CASE("descent vs exhaustive search: cyclic group of order twelve") {
  GroupPtr c = cyclic_group(12);
  check_group(c);
  const CharTable& t = character_table(*c);
  REQUIRE(t.row_count() == 12);
  const MonomialityReport& rep = monomiality_report(*c);
  CHECK(rep.m_group);
  CHECK(rep.super_m_group);
  for (std::uint32_t i = 0; i < t.row_count(); ++i) {
    CHECK(rep.rows[i].primitive);  // linear characters have no proper inducer
    std::vector<InducerNode> nodes = primitive_inducers(*c, t.rows[i]);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0].subgroup.size() == c->order());
    CHECK(nodes[0].character == t.rows[i]);
  }
}

TEST_CASE("descent vs exhaustive search: alternating group on four points") {
  GroupPtr g = a4();
  REQUIRE(g->order() == 12);
  check_group(g);
  const CharTable& t = character_table(*g);
  REQUIRE(degrees_of(t) == std::vector<u64>{1, 1, 1, 3});
  CHECK(is_M_group(*g));
  CHECK(is_super_M_group(*g));

  // degree 3 is induced from the normal four-group; its three inducing
  // linears form one conjugacy orbit, so the listing has a single node
  Members v4 = members_of_order_dividing(*g, 2);
  REQUIRE(v4.size() == 4);
  const MonomialityReport& rep = monomiality_report(*g);
  REQUIRE(rep.rows[3].witness.has_value());
  CHECK(rep.rows[3].witness->first == v4);
  std::vector<InducerNode> nodes = primitive_inducers(*g, t.rows[3]);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].subgroup == v4);
}

TEST_CASE("descent vs exhaustive search: order twenty-one") {
  GroupPtr f = testgroups::frob21();
  check_group(f);
  const CharTable& t = character_table(*f);
  REQUIRE(degrees_of(t) == std::vector<u64>{1, 1, 1, 3, 3});
  CHECK(is_M_group(*f));
  CHECK(is_super_M_group(*f));

  Members c7 = members_of_order_dividing(*f, 7);
  REQUIRE(c7.size() == 7);
  const MonomialityReport& rep = monomiality_report(*f);
  std::vector<std::vector<InducerNode>> per_row;
  for (std::uint32_t i : {3u, 4u}) {
    REQUIRE(rep.rows[i].witness.has_value());
    CHECK(rep.rows[i].witness->first == c7);
    std::vector<InducerNode> nodes = primitive_inducers(*f, t.rows[i]);
    REQUIRE(nodes.size() == 1);  // three conjugate linears collapse to one
    CHECK(nodes[0].subgroup == c7);
    per_row.push_back(std::move(nodes));
  }
  // the two degree-3 rows come from different linear orbits
  CHECK(per_row[0][0].character != per_row[1][0].character);
}

TEST_CASE("descent vs exhaustive search: special linear group of degree two over three elements") {
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr sl = testgroups::sl2_3(gl);
  REQUIRE(sl->order() == 24);
  check_group(sl);
  const CharTable& t = character_table(*sl);
  REQUIRE(degrees_of(t) == std::vector<u64>{1, 1, 1, 2, 2, 2, 3});

  // all three degree-2 rows are primitive, hence not monomial
  const MonomialityReport& rep = monomiality_report(*sl);
  for (std::uint32_t i : {3u, 4u, 5u}) {
    CHECK(!rep.rows[i].monomial);
    CHECK(rep.rows[i].primitive);
    CHECK(!rep.rows[i].super_monomial);
    std::vector<InducerNode> nodes = primitive_inducers(*sl, t.rows[i]);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0].subgroup.size() == sl->order());
  }
  CHECK(!is_M_group(*sl));
  CHECK(!is_super_M_group(*sl));

  // degree 3 is monomial, induced from the quaternion subgroup
  Members q8_local;
  for (Id a = 0; a < sl->order(); ++a)
    if (4 % sl->element_order(a) == 0) q8_local.push_back(a);
  REQUIRE(q8_local.size() == 8);
  CHECK(rep.rows[6].monomial);
  REQUIRE(rep.rows[6].witness.has_value());
  CHECK(rep.rows[6].witness->first == q8_local);
}

TEST_CASE("descent vs exhaustive search: general linear group of degree two over three elements") {
  GroupPtr gl = testgroups::gl2_3();
  check_group(gl);
  const CharTable& t = character_table(*gl);
  REQUIRE(degrees_of(t) == std::vector<u64>{1, 1, 2, 2, 2, 3, 3, 4});
  const MonomialityReport& rep = monomiality_report(*gl);

  // exactly two rows fail monomiality: both of degree 2 and primitive
  std::vector<std::uint32_t> bad;
  for (std::uint32_t i = 0; i < t.row_count(); ++i)
    if (!rep.rows[i].monomial) bad.push_back(i);
  REQUIRE(bad.size() == 2);
  for (std::uint32_t i : bad) {
    CHECK(rep.rows[i].degree == 2);
    CHECK(rep.rows[i].primitive);
  }
  CHECK(!is_M_group(*gl));
  CHECK(!is_super_M_group(*gl));

  // the remaining degree-2 row is induced from a linear character of the
  // determinant-one subgroup (the unique subgroup of index two)
  Members sl_members = testgroups::det_one_members(*gl);
  for (std::uint32_t i : {2u, 3u, 4u}) {
    if (!rep.rows[i].monomial) continue;
    REQUIRE(rep.rows[i].witness.has_value());
    CHECK(rep.rows[i].witness->first == sl_members);
    CHECK(rep.rows[i].super_monomial);
  }
}

TEST_CASE("monomiality reports are deterministic across rebuilds") {
  auto compare = [](GroupPtr a, GroupPtr b) {
    const MonomialityReport& ra = monomiality_report(*a);
    const MonomialityReport& rb = monomiality_report(*b);
    REQUIRE(ra.rows.size() == rb.rows.size());
    CHECK(ra.m_group == rb.m_group);
    CHECK(ra.super_m_group == rb.super_m_group);
    const CharTable& ta = character_table(*a);
    for (std::size_t i = 0; i < ra.rows.size(); ++i) {
      CHECK(ra.rows[i].degree == rb.rows[i].degree);
      CHECK(ra.rows[i].monomial == rb.rows[i].monomial);
      CHECK(ra.rows[i].primitive == rb.rows[i].primitive);
      CHECK(ra.rows[i].super_monomial == rb.rows[i].super_monomial);
      CHECK(ra.rows[i].witness == rb.rows[i].witness);
      std::vector<InducerNode> na =
          primitive_inducers(*a, ta.rows[i]);
      std::vector<InducerNode> nb =
          primitive_inducers(*b, character_table(*b).rows[i]);
      REQUIRE(na.size() == nb.size());
      for (std::size_t k = 0; k < na.size(); ++k) {
        CHECK(na[k].subgroup == nb[k].subgroup);
        CHECK(na[k].character.values == nb[k].character.values);
      }
    }
  };
  compare(testgroups::s3(), testgroups::s3());
  compare(testgroups::frob21(), testgroups::frob21());
}

TEST_CASE("normal subgroups of super M-groups are M-groups") {
  std::vector<GroupPtr> supers{testgroups::s3(), testgroups::frob21(), a4(), cyclic_group(12)};
  GroupPtr gl = testgroups::gl2_3();
  supers.push_back(testgroups::q8(gl));  // exercises views of views
  supers.push_back(d8());
  for (const GroupPtr& gp : supers) {
    REQUIRE(is_super_M_group(*gp));
    for (const Members& n : normal_subgroups(*gp)) {
      GroupPtr v = subgroup_view(gp, n);
      CHECK(is_M_group(*v));
    }
  }
}

TEST_CASE("exhaustive cross-check refuses above the subgroup tier") {
  GroupPtr c = cyclic_group(2048);
  REQUIRE(c->order() > kExhaustiveTier);
  ClassFunction one;
  one.group_digest = c->digest();
  one.values.assign(conjugacy_classes(*c).count(), Cyclotomic::from_int(1));
  try {
    is_super_monomial_by_all_inducers(*c, one);
    FAIL("expected a tier error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TierExceeded);
  }
}

TEST_CASE("monomiality rejects characters that are not rows of the table") {
  GroupPtr s = testgroups::s3();
  GroupPtr f = testgroups::frob21();
  const Character& foreign = character_table(*f).rows[3];
  try {
    is_monomial(*s, foreign);
    FAIL("expected an input error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  ClassFunction doubled = character_table(*s).rows[0];
  for (Cyclotomic& v : doubled.values) v += Cyclotomic::from_int(1);
  try {
    is_monomial(*s, doubled);
    FAIL("expected an input error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
}
