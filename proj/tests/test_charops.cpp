// Tests for class-function operations: restriction, induction, inner
// products, constituent decomposition, pointwise products, inflation,
// kernels, determinant characters, inertia groups, and extension lookup.
//
// Independent oracles: induction is cross-checked against the raw averaging
// definition (a sum over all group elements), inertia groups against an
// elementwise conjugation scan, and determinants against the tensor-product
// identity det(V (x) W) = det(V)^dim(W) det(W)^dim(V).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <optional>
#include <vector>

#include "common_groups.hpp"
#include "pichar/charops.hpp"
#include "pichar/chartable.hpp"
#include "pichar/classes.hpp"
#include "pichar/group.hpp"
#include "pichar/subgroup.hpp"
#include "test_oracles.hpp"

using namespace pichar;
using testoracle::induced_by_definition;
using testoracle::members_of_order_dividing;
using testoracle::parent_to_view;

namespace {

/// Inertia group computed from the definition: all g with
/// theta(g h g^{-1}) = theta(h) for every member h of the view.
Members inertia_by_definition(const Group& G, const Group& H, const ClassFunction& theta) {
  std::vector<Id> back = parent_to_view(G, H);
  const ConjClasses& hc = conjugacy_classes(H);
  Members t;
  for (Id g = 0; g < G.order(); ++g) {
    Id ginv = G.inv(g);
    bool ok = true;
    for (Id h = 0; h < H.order() && ok; ++h) {
      Id y = G.mul(G.mul(g, H.data(h)[0]), ginv);
      REQUIRE(back[y] != static_cast<Id>(G.order()));
      if (theta.values[hc.class_of[back[y]]] != theta.values[hc.class_of[h]]) ok = false;
    }
    if (ok) t.push_back(g);
  }
  return t;
}

/// Pointwise k-th power of a class function.
ClassFunction cf_pow(const ClassFunction& f, u64 k) {
  ClassFunction out;
  out.group_digest = f.group_digest;
  for (const Cyclotomic& v : f.values) {
    Cyclotomic p = Cyclotomic::from_int(1);
    for (u64 i = 0; i < k; ++i) p *= v;
    out.values.push_back(p);
  }
  return out;
}

/// Transport a class function between two views of possibly different groups
/// that share an ultimate ambient group, matching elements through the chain
/// of data()[0] links given by to_ambient callables.
template <class FA, class FB>
ClassFunction transport(const Group& from, const ClassFunction& f, const Group& to, FA from_amb,
                        FB to_amb) {
  const ConjClasses& tc = conjugacy_classes(to);
  std::vector<Cyclotomic> vals;
  for (std::uint32_t c = 0; c < tc.count(); ++c) {
    Id amb = to_amb(tc.reps[c]);
    // Find the element of `from` with the same ambient image.
    std::optional<Id> match;
    for (Id a = 0; a < from.order() && !match; ++a)
      if (from_amb(a) == amb) match = a;
    REQUIRE(match.has_value());
    vals.push_back(value_at_element(from, f, *match));
  }
  return make_class_function(to, vals);
}

u64 degree_of(const ClassFunction& f) { return character_degree(f); }

}  // namespace

TEST_CASE("restriction picks values along the subgroup embedding") {
  GroupPtr s3 = testgroups::s3();
  GroupPtr a3 = subgroup_view(s3, members_of_order_dividing(*s3, 3));
  const CharTable& ts = character_table(*s3);
  REQUIRE(ts.row_count() == 3);

  ClassFunction r = restrict_to(*s3, ts.rows[2], *a3);
  CHECK(r.group_digest == a3->digest());
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == Cyclotomic::from_int(2));
  CHECK(r.values[1] == Cyclotomic::from_int(-1));
  CHECK(r.values[2] == Cyclotomic::from_int(-1));

  // The restriction decomposes into the two nontrivial linear rows of the
  // subgroup, each once.
  std::vector<Constituent> dec = constituents(*a3, r);
  CHECK(dec == std::vector<Constituent>{{1, 1}, {2, 1}});

  // The sign character restricts to the principal character.
  ClassFunction rs = restrict_to(*s3, ts.rows[1], *a3);
  CHECK(rs == character_table(*a3).rows[0]);
}

TEST_CASE("induction matches the averaging definition") {
  struct Pair {
    GroupPtr g;
    GroupPtr h;
  };
  std::vector<Pair> pairs;
  {
    GroupPtr s3 = testgroups::s3();
    pairs.push_back({s3, subgroup_view(s3, members_of_order_dividing(*s3, 3))});
  }
  {
    GroupPtr f21 = testgroups::frob21();
    pairs.push_back({f21, subgroup_view(f21, members_of_order_dividing(*f21, 7))});
  }
  {
    GroupPtr gl = testgroups::gl2_3();
    pairs.push_back({gl, testgroups::q8(gl)});
  }
  for (const Pair& p : pairs) {
    const CharTable& th = character_table(*p.h);
    for (const Character& theta : th.rows) {
      ClassFunction lib = induce_from(*p.g, *p.h, theta);
      ClassFunction def = induced_by_definition(*p.g, *p.h, theta);
      CHECK(lib == def);
      CHECK(degree_of(lib) == degree_of(theta) * (p.g->order() / p.h->order()));
    }
  }
}

TEST_CASE("induction from an index-two and index-three subgroup hits known rows") {
  GroupPtr s3 = testgroups::s3();
  GroupPtr a3 = subgroup_view(s3, members_of_order_dividing(*s3, 3));
  const CharTable& ts = character_table(*s3);
  const CharTable& ta = character_table(*a3);

  // A nontrivial linear character of the order-three subgroup induces the
  // degree-two irreducible row exactly.
  CHECK(induce_from(*s3, *a3, ta.rows[1]) == ts.rows[2]);
  CHECK(induce_from(*s3, *a3, ta.rows[2]) == ts.rows[2]);

  // The principal character induces principal + sign.
  std::vector<Constituent> dec = constituents(*s3, induce_from(*s3, *a3, ta.rows[0]));
  CHECK(dec == std::vector<Constituent>{{0, 1}, {1, 1}});

  // Each nontrivial linear character of the order-seven normal subgroup of
  // the order-21 group induces one of the degree-three rows.
  GroupPtr f21 = testgroups::frob21();
  GroupPtr c7 = subgroup_view(f21, members_of_order_dividing(*f21, 7));
  const CharTable& tf = character_table(*f21);
  const CharTable& tc = character_table(*c7);
  for (std::uint32_t i = 1; i < 7; ++i) {
    ClassFunction ind = induce_from(*f21, *c7, tc.rows[i]);
    bool is_row = ind == tf.rows[3] || ind == tf.rows[4];
    CHECK(is_row);
  }
}

TEST_CASE("Frobenius reciprocity holds across restriction and induction") {
  struct Pair {
    GroupPtr g;
    GroupPtr h;
  };
  std::vector<Pair> pairs;
  {
    GroupPtr s3 = testgroups::s3();
    pairs.push_back({s3, subgroup_view(s3, members_of_order_dividing(*s3, 3))});
  }
  {
    GroupPtr f21 = testgroups::frob21();
    pairs.push_back({f21, subgroup_view(f21, members_of_order_dividing(*f21, 7))});
  }
  for (const Pair& p : pairs) {
    const CharTable& tg = character_table(*p.g);
    const CharTable& th = character_table(*p.h);
    for (const Character& theta : th.rows) {
      ClassFunction ind = induce_from(*p.g, *p.h, theta);
      for (const Character& chi : tg.rows) {
        Rat lhs = inner_product(*p.g, ind, chi);
        Rat rhs = inner_product(*p.h, theta, restrict_to(*p.g, chi, *p.h));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("induction composes in stages through an intermediate subgroup") {
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr sl = testgroups::sl2_3(gl);
  GroupPtr q8_in_gl = testgroups::q8(gl);

  // The same eight elements as a view of the intermediate group.
  std::vector<Id> q8_gl_ids;
  for (Id a = 0; a < q8_in_gl->order(); ++a) q8_gl_ids.push_back(q8_in_gl->data(a)[0]);
  Members q8_sl_members;
  for (Id h = 0; h < sl->order(); ++h)
    if (std::find(q8_gl_ids.begin(), q8_gl_ids.end(), sl->data(h)[0]) != q8_gl_ids.end())
      q8_sl_members.push_back(h);
  GroupPtr q8_in_sl = subgroup_view(sl, q8_sl_members);
  REQUIRE(q8_in_sl->order() == 8);

  auto q8gl_to_amb = [&](Id a) { return q8_in_gl->data(a)[0]; };
  auto q8sl_to_amb = [&](Id a) { return sl->data(q8_in_sl->data(a)[0])[0]; };

  const CharTable& tq = character_table(*q8_in_gl);
  for (const Character& theta : tq.rows) {
    ClassFunction theta_sl = transport(*q8_in_gl, theta, *q8_in_sl, q8gl_to_amb, q8sl_to_amb);
    ClassFunction staged = induce_from(*gl, *sl, induce_from(*sl, *q8_in_sl, theta_sl));
    ClassFunction direct = induce_from(*gl, *q8_in_gl, theta);
    CHECK(staged == direct);
  }
}

TEST_CASE("inner products are orthonormal on rows and reject irrational values") {
  GroupPtr f21 = testgroups::frob21();
  const CharTable& t = character_table(*f21);
  for (std::uint32_t i = 0; i < t.row_count(); ++i)
    for (std::uint32_t j = 0; j < t.row_count(); ++j)
      CHECK(inner_product(*f21, t.rows[i], t.rows[j]) == Rat(i == j ? 1 : 0));

  GroupPtr c3 = cyclic_group(3);
  ClassFunction f = make_class_function(
      *c3, {Cyclotomic::from_int(1), Cyclotomic::root_of_unity(3, 1), Cyclotomic()});
  const CharTable& tc = character_table(*c3);
  CHECK_THROWS_AS((void)inner_product(*c3, f, tc.rows[0]), Error);
}

TEST_CASE("constituent decomposition is exact and rejects non-characters") {
  GroupPtr s3 = testgroups::s3();
  const CharTable& t = character_table(*s3);

  // Square of the degree-two row: one copy of every irreducible row.
  ClassFunction sq = cf_product(*s3, t.rows[2], t.rows[2]);
  CHECK(constituents(*s3, sq) == std::vector<Constituent>{{0, 1}, {1, 1}, {2, 1}});

  // A function with non-integral inner products is rejected.
  ClassFunction bad = make_class_function(
      *s3, {Cyclotomic::from_int(1), Cyclotomic::from_int(1), Cyclotomic()});
  CHECK_THROWS_AS((void)constituents(*s3, bad), Error);

  GroupPtr f21 = testgroups::frob21();
  const CharTable& tf = character_table(*f21);

  // A degree-three row times a linear row is again a degree-three row, and
  // times its own conjugate it contains every row exactly once.
  CHECK(cf_product(*f21, tf.rows[3], tf.rows[1]) == tf.rows[3]);
  ClassFunction norm = cf_product(*f21, tf.rows[3], make_class_function(*f21, [&] {
                                    std::vector<Cyclotomic> conj;
                                    for (const Cyclotomic& v : tf.rows[3].values)
                                      conj.push_back(v.conj());
                                    return conj;
                                  }()));
  CHECK(constituents(*f21, norm) ==
        std::vector<Constituent>{{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
}

TEST_CASE("inflation along a quotient projection reproduces table rows") {
  GroupPtr s3 = testgroups::s3();
  QuotientResult qs = quotient_group(s3, members_of_order_dividing(*s3, 3));
  REQUIRE(qs.group->order() == 2);
  const CharTable& tq = character_table(*qs.group);
  ClassFunction sign = inflate(*s3, qs.projection, *qs.group, tq.rows[1]);
  CHECK(sign == character_table(*s3).rows[1]);

  // Inflating the degree-two row of the order-six quotient of the ambient
  // matrix group along the quaternion subgroup lands on a table row whose
  // kernel is exactly that subgroup.
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr q8_in_gl = testgroups::q8(gl);
  Members q8_members;
  for (Id a = 0; a < q8_in_gl->order(); ++a) q8_members.push_back(q8_in_gl->data(a)[0]);
  std::sort(q8_members.begin(), q8_members.end());
  QuotientResult qg = quotient_group(gl, q8_members);
  REQUIRE(qg.group->order() == 6);
  const CharTable& tqg = character_table(*qg.group);
  REQUIRE(degree_of(tqg.rows[2]) == 2);
  ClassFunction infl = inflate(*gl, qg.projection, *qg.group, tqg.rows[2]);
  const CharTable& tgl = character_table(*gl);
  bool is_row = false;
  for (const Character& row : tgl.rows)
    if (row == infl) is_row = true;
  CHECK(is_row);
  CHECK(char_kernel(*gl, infl) == q8_members);

  // Shape guard: a projection of the wrong length is rejected.
  CHECK_THROWS_AS((void)inflate(*s3, qg.projection, *qg.group, tqg.rows[0]), Error);
}

TEST_CASE("character kernels are the expected normal member sets") {
  GroupPtr s3 = testgroups::s3();
  const CharTable& t = character_table(*s3);
  Members all(6);
  for (Id a = 0; a < 6; ++a) all[a] = a;
  CHECK(char_kernel(*s3, t.rows[0]) == all);
  CHECK(char_kernel(*s3, t.rows[1]) == members_of_order_dividing(*s3, 3));
  CHECK(char_kernel(*s3, t.rows[2]) == Members{0});

  GroupPtr f21 = testgroups::frob21();
  const CharTable& tf = character_table(*f21);
  CHECK(char_kernel(*f21, tf.rows[1]) == members_of_order_dividing(*f21, 7));
  CHECK(char_kernel(*f21, tf.rows[3]) == Members{0});
}

TEST_CASE("determinant characters are certified linear rows") {
  GroupPtr s3 = testgroups::s3();
  const CharTable& ts = character_table(*s3);
  CHECK(det_character(*s3, ts.rows[2]) == ts.rows[1]);
  CHECK(determinantal_order(*s3, det_character(*s3, ts.rows[2])) == 2);

  // The degree-two row of the quaternion group has principal determinant.
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr q8_in_gl = testgroups::q8(gl);
  const CharTable& tq = character_table(*q8_in_gl);
  REQUIRE(degree_of(tq.rows[4]) == 2);
  CHECK(det_character(*q8_in_gl, tq.rows[4]) == tq.rows[0]);
  CHECK(determinantal_order(*q8_in_gl, tq.rows[0]) == 1);

  // Degree-three rows of the order-21 group are induced from the derived
  // subgroup and have principal determinant.
  GroupPtr f21 = testgroups::frob21();
  const CharTable& tf = character_table(*f21);
  CHECK(det_character(*f21, tf.rows[3]) == tf.rows[0]);
  CHECK(det_character(*f21, tf.rows[4]) == tf.rows[0]);
  CHECK(determinantal_order(*f21, tf.rows[1]) == 3);
  CHECK(determinantal_order(*f21, tf.rows[2]) == 3);

  // Linear rows are their own determinants.
  const CharTable& tgl = character_table(*gl);
  CHECK(det_character(*gl, tgl.rows[0]) == tgl.rows[0]);
  CHECK(det_character(*gl, tgl.rows[1]) == tgl.rows[1]);

  // Guards: non-linear input to the order computation, a linear-degree
  // function whose value is no root of unity, and a corrupted character.
  CHECK_THROWS_AS((void)determinantal_order(*s3, ts.rows[2]), Error);
  GroupPtr c2 = cyclic_group(2);
  ClassFunction notroot =
      make_class_function(*c2, {Cyclotomic::from_int(1), Cyclotomic::from_int(2)});
  CHECK_THROWS_AS((void)determinantal_order(*c2, notroot), Error);
  ClassFunction corrupt = ts.rows[2];
  corrupt.values[2] = Cyclotomic::from_int(1);
  CHECK_THROWS_AS((void)det_character(*s3, corrupt), Error);
}

TEST_CASE("determinants obey the tensor-product identity") {
  // det(V (x) W) = det(V)^dim(W) * det(W)^dim(V), checked pointwise.
  struct Case {
    GroupPtr g;
    std::uint32_t i;
    std::uint32_t j;
  };
  std::vector<Case> cases;
  {
    GroupPtr s3 = testgroups::s3();
    cases.push_back({s3, 2, 2});
  }
  {
    GroupPtr gl = testgroups::gl2_3();
    cases.push_back({gl, 2, 5});  // a degree-two row with a degree-three row
    cases.push_back({gl, 7, 7});  // the degree-four row squared
  }
  {
    GroupPtr f21 = testgroups::frob21();
    cases.push_back({f21, 3, 4});  // two degree-three rows (nine eigenvalues)
    cases.push_back({f21, 3, 1});  // a degree-three row with an order-three linear
  }
  for (const Case& c : cases) {
    const CharTable& t = character_table(*c.g);
    const Character& chi = t.rows[c.i];
    const Character& psi = t.rows[c.j];
    Character lhs = det_character(*c.g, cf_product(*c.g, chi, psi));
    ClassFunction rhs = cf_product(*c.g, cf_pow(det_character(*c.g, chi), degree_of(psi)),
                                   cf_pow(det_character(*c.g, psi), degree_of(chi)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("inertia groups match the conjugation scan and gate extensions") {
  GroupPtr f21 = testgroups::frob21();
  GroupPtr c7 = subgroup_view(f21, members_of_order_dividing(*f21, 7));
  const CharTable& tc = character_table(*c7);
  for (std::uint32_t i = 0; i < tc.row_count(); ++i) {
    Members lib = inertia_group(*f21, *c7, tc.rows[i]);
    CHECK(lib == inertia_by_definition(*f21, *c7, tc.rows[i]));
    if (i == 0) {
      CHECK(lib.size() == 21);
      CHECK(extends_to(*f21, *c7, tc.rows[i]) == std::optional<std::uint32_t>{0});
    } else {
      // Nontrivial linear characters of the order-seven subgroup are moved by
      // the order-three action: the inertia group is the subgroup itself and
      // no extension exists.
      CHECK(lib == members_of_order_dividing(*f21, 7));
      CHECK(!extends_to(*f21, *c7, tc.rows[i]).has_value());
    }
  }

  GroupPtr gl = testgroups::gl2_3();
  GroupPtr q8_in_gl = testgroups::q8(gl);
  const CharTable& tq = character_table(*q8_in_gl);
  for (std::uint32_t i = 0; i < tq.row_count(); ++i) {
    Members lib = inertia_group(*gl, *q8_in_gl, tq.rows[i]);
    CHECK(lib == inertia_by_definition(*gl, *q8_in_gl, tq.rows[i]));
  }
  // The degree-two row is invariant under the whole ambient group and
  // extends to it.
  CHECK(inertia_group(*gl, *q8_in_gl, tq.rows[4]).size() == 48);
  std::optional<std::uint32_t> ext = extends_to(*gl, *q8_in_gl, tq.rows[4]);
  REQUIRE(ext.has_value());
  const CharTable& tgl = character_table(*gl);
  CHECK(degree_of(tgl.rows[*ext]) == 2);
  CHECK(restrict_to(*gl, tgl.rows[*ext], *q8_in_gl) == tq.rows[4]);

  // Extension agreement on every row: whenever a row index comes back, its
  // restriction is the input; whenever none does, no row restricts to it.
  for (std::uint32_t i = 0; i < tq.row_count(); ++i) {
    std::optional<std::uint32_t> e = extends_to(*gl, *q8_in_gl, tq.rows[i]);
    bool any = false;
    for (const Character& row : tgl.rows)
      if (restrict_to(*gl, row, *q8_in_gl) == tq.rows[i]) any = true;
    CHECK(e.has_value() == any);
    if (e.has_value()) CHECK(restrict_to(*gl, tgl.rows[*e], *q8_in_gl) == tq.rows[i]);
  }

  // A non-normal subgroup is rejected.
  GroupPtr s3 = testgroups::s3();
  Id flip = 0;
  for (Id a = 0; a < s3->order(); ++a)
    if (s3->element_order(a) == 2) flip = a;
  GroupPtr c2 = subgroup_view(s3, {0, flip});
  const CharTable& t2 = character_table(*c2);
  CHECK_THROWS_AS((void)inertia_group(*s3, *c2, t2.rows[0]), Error);
}

TEST_CASE("extension lookup works on a view of a view") {
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr sl = testgroups::sl2_3(gl);
  GroupPtr q8_in_gl = testgroups::q8(gl);
  std::vector<Id> q8_gl_ids;
  for (Id a = 0; a < q8_in_gl->order(); ++a) q8_gl_ids.push_back(q8_in_gl->data(a)[0]);
  Members q8_sl_members;
  for (Id h = 0; h < sl->order(); ++h)
    if (std::find(q8_gl_ids.begin(), q8_gl_ids.end(), sl->data(h)[0]) != q8_gl_ids.end())
      q8_sl_members.push_back(h);
  GroupPtr q8_in_sl = subgroup_view(sl, q8_sl_members);

  auto q8gl_to_amb = [&](Id a) { return q8_in_gl->data(a)[0]; };
  auto q8sl_to_amb = [&](Id a) { return sl->data(q8_in_sl->data(a)[0])[0]; };
  const CharTable& tq = character_table(*q8_in_gl);
  REQUIRE(degree_of(tq.rows[4]) == 2);
  ClassFunction theta = transport(*q8_in_gl, tq.rows[4], *q8_in_sl, q8gl_to_amb, q8sl_to_amb);

  std::optional<std::uint32_t> ext = extends_to(*sl, *q8_in_sl, theta);
  REQUIRE(ext.has_value());
  const CharTable& tsl = character_table(*sl);
  CHECK(degree_of(tsl.rows[*ext]) == 2);
  CHECK(restrict_to(*sl, tsl.rows[*ext], *q8_in_sl) == theta);
}

TEST_CASE("ownership guards reject mismatched groups and functions") {
  GroupPtr s3 = testgroups::s3();
  GroupPtr f21 = testgroups::frob21();
  GroupPtr gl = testgroups::gl2_3();
  GroupPtr sl = testgroups::sl2_3(gl);
  GroupPtr q8_in_gl = testgroups::q8(gl);
  const CharTable& ts = character_table(*s3);
  const CharTable& tf = character_table(*f21);
  const CharTable& tgl = character_table(*gl);

  // A class function of the wrong group is rejected.
  CHECK_THROWS_AS((void)restrict_to(*s3, tf.rows[0], *s3), Error);
  CHECK_THROWS_AS((void)cf_product(*s3, ts.rows[0], tf.rows[0]), Error);
  CHECK_THROWS_AS((void)inner_product(*s3, ts.rows[0], tf.rows[0]), Error);

  // A view of a different parent group is rejected.
  CHECK_THROWS_AS((void)restrict_to(*sl, tgl.rows[0], *q8_in_gl), Error);
  CHECK_THROWS_AS((void)induce_from(*sl, *q8_in_gl, character_table(*q8_in_gl).rows[0]), Error);

  // A plain group is not a view at all.
  CHECK_THROWS_AS((void)restrict_to(*s3, ts.rows[0], *f21), Error);
}
