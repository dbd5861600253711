// Character tables: independent degree oracle, structure constants, frozen
// small tables, dual-group comparison for abelian groups, verification and
// determinism checks.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "common_groups.hpp"
#include "doctest.h"
#include "pichar/chartable.hpp"
#include "pichar/classes.hpp"
#include "pichar/cyclotomic.hpp"
#include "pichar/group.hpp"
#include "pichar/modlinalg.hpp"
#include "pichar/subgroup.hpp"

using namespace pichar;
using testgroups::frob21;
using testgroups::gl2_3;
using testgroups::q8;
using testgroups::s3;

namespace {

// ---------------------------------------------------------------------------
// Independent degree oracle: decompose the regular representation by taking a
// random central element z = sum_g c(class of g) g, forming its left-action
// matrix, and reading isotypic dimensions off the squarefree structure of its
// characteristic polynomial (an irreducible of degree d contributes one
// eigenvalue of multiplicity d^2). The characteristic polynomial is computed
// by determinant interpolation; nothing is shared with the table builder.
// ---------------------------------------------------------------------------

using Poly = std::vector<u64>;  // lowest-degree-first, no trailing zeros

Poly poly_trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_derivative(const Poly& f, u64 p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * (i % p) % p);
  return poly_trim(std::move(d));
}

Poly poly_monic(Poly f, u64 p) {
  f = poly_trim(std::move(f));
  if (f.empty()) return f;
  u64 s = mod_inv(f.back(), p);
  for (u64& c : f) c = c * s % p;
  return f;
}

/// Divides a by monic b; returns the quotient and leaves the remainder in a.
Poly poly_divmod(Poly& a, const Poly& b, u64 p) {
  REQUIRE(!b.empty());
  REQUIRE(b.back() == 1);
  a = poly_trim(std::move(a));
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size()) {
    u64 c = a.back();
    std::size_t shift = a.size() - b.size();
    if (c != 0) {
      q[shift] = c;
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    }
    a.pop_back();
    a = poly_trim(std::move(a));
  }
  return poly_trim(std::move(q));
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!b.empty()) {
    Poly bm = poly_monic(b, p);
    poly_divmod(a, bm, p);  // a becomes the remainder
    b = std::move(a);
    a = std::move(bm);
  }
  return poly_monic(std::move(a), p);
}

u64 det_mod(std::vector<std::vector<u64>> m, u64 p) {
  std::size_t n = m.size();
  u64 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = (p - det) % p;
    }
    det = det * m[col][col] % p;
    u64 inv = mod_inv(m[col][col], p);
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      u64 f = m[row][col] * inv % p;
      for (std::size_t k = col; k < n; ++k) m[row][k] = (m[row][k] + p - f * m[col][k] % p) % p;
    }
  }
  return det;
}

/// Characteristic polynomial det(xI - A) via evaluation at x = 0..n and
/// Newton-form interpolation.
Poly charpoly_by_interpolation(const std::vector<std::vector<u64>>& a, u64 p) {
  std::size_t n = a.size();
  std::vector<u64> val(n + 1);
  for (u64 x = 0; x <= n; ++x) {
    std::vector<std::vector<u64>> m(n, std::vector<u64>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m[i][j] = (i == j) ? (x + p - a[i][j]) % p : (p - a[i][j]) % p;
    val[x] = det_mod(std::move(m), p);
  }
  std::vector<u64> dd = val;  // divided differences over the nodes 0..n
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = n; i >= j; --i) {
      dd[i] = (dd[i] + p - dd[i - 1]) % p * mod_inv(j % p, p) % p;
      if (i == j) break;
    }
  Poly f = {dd[n]};
  for (std::size_t k = n; k-- > 0;) {
    Poly g(f.size() + 1, 0);  // f * (x - k) + dd[k]
    for (std::size_t i = 0; i < f.size(); ++i) {
      g[i + 1] = (g[i + 1] + f[i]) % p;
      g[i] = (g[i] + p - f[i] * (k % p) % p) % p;
    }
    g[0] = (g[0] + dd[k]) % p;
    f = std::move(g);
  }
  return poly_trim(std::move(f));
}

/// Degree multiset from one random central element; empty on a detected
/// eigenvalue collision (caller retries with another prime and seed).
std::map<u64, u64> regular_degree_counts_once(const Group& g, u64 p, u64 seed) {
  const ConjClasses& cc = conjugacy_classes(g);
  std::mt19937_64 rng(seed);
  std::vector<u64> coeff(cc.count());
  for (u64& c : coeff) c = rng() % p;
  std::size_t n = g.order();
  std::vector<std::vector<u64>> a(n, std::vector<u64>(n));
  for (Id x = 0; x < n; ++x)
    for (Id y = 0; y < n; ++y) a[x][y] = coeff[cc.class_of[g.mul(x, g.inv(y))]];
  Poly f = charpoly_by_interpolation(a, p);
  REQUIRE(f.size() == n + 1);
  REQUIRE(f.back() == 1);
  // Yun's squarefree decomposition f = prod a_m^m (p far exceeds n, so the
  // p-th-power branch never arises).
  std::map<u64, u64> counts;  // degree -> number of irreducibles
  u64 root_total = 0, mass_total = 0;
  Poly gpart = poly_gcd(f, poly_derivative(f, p), p);
  Poly w = f;
  {
    Poly quot = poly_divmod(w, gpart, p);
    REQUIRE(w.empty());
    w = std::move(quot);
  }
  for (u64 m = 1; w.size() > 1; ++m) {
    Poly y = poly_gcd(w, gpart, p);
    Poly rem = std::move(w);
    Poly factor = poly_divmod(rem, y, p);
    REQUIRE(rem.empty());
    u64 deg = factor.size() - 1;
    if (deg > 0) {
      u64 d = 0;
      while (d * d < m) ++d;
      if (d * d != m) return {};  // eigenvalues merged across isotypic sizes
      counts[d] += deg;
      root_total += deg;
      mass_total += deg * m;
    }
    w = std::move(y);
    Poly grem = std::move(gpart);
    Poly gq = poly_divmod(grem, w, p);
    REQUIRE(grem.empty());
    gpart = std::move(gq);
  }
  if (mass_total != g.order() || root_total != cc.count()) return {};
  return counts;
}

std::map<u64, u64> regular_degree_counts(const Group& g) {
  auto first = regular_degree_counts_once(g, 999983, 0xC0FFEEu);
  auto second = regular_degree_counts_once(g, 524287, 0xFEEDFACEu);
  REQUIRE(!first.empty());
  REQUIRE(first == second);
  return first;
}

std::map<u64, u64> table_degree_counts(const CharTable& t) {
  std::map<u64, u64> counts;
  for (const Character& row : t.rows) ++counts[character_degree(row)];
  return counts;
}

std::vector<u64> table_degrees(const CharTable& t) {
  std::vector<u64> d;
  for (const Character& row : t.rows) d.push_back(character_degree(row));
  return d;
}

Cyclotomic cyc(long v) { return Cyclotomic::from_int(v); }

bool row_set_equal(std::vector<Character> a, std::vector<Character> b) {
  auto less = [](const Character& x, const Character& y) {
    for (std::size_t c = 0; c < x.values.size(); ++c) {
      int cmp = table_value_compare(x.values[c], y.values[c]);
      if (cmp != 0) return cmp < 0;
    }
    return false;
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

}  // namespace

TEST_CASE("regular-representation degree oracle matches frozen degree multisets") {
  struct Expect {
    GroupPtr g;
    std::map<u64, u64> degrees;
  };
  GroupPtr gl = gl2_3();
  std::vector<Expect> cases;
  cases.push_back({cyclic_group(2), {{1, 2}}});
  cases.push_back({s3(), {{1, 2}, {2, 1}}});
  cases.push_back({q8(gl), {{1, 4}, {2, 1}}});
  cases.push_back({frob21(), {{1, 3}, {3, 2}}});
  cases.push_back({gl, {{1, 2}, {2, 3}, {3, 2}, {4, 1}}});
  for (const Expect& e : cases) {
    CAPTURE(e.g->describe());
    CHECK(regular_degree_counts(*e.g) == e.degrees);
  }
}

TEST_CASE("class-sum structure constants match brute-force pair counting") {
  for (GroupPtr g : {s3(), frob21(), gl2_3()}) {
    CAPTURE(g->describe());
    const ConjClasses& cc = conjugacy_classes(*g);
    std::uint32_t r = cc.count();
    auto a = class_mult_coefficients(*g);
    REQUIRE(a.size() == r);
    // Brute force: count factorizations of each class representative.
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < r; ++j)
        for (std::uint32_t k = 0; k < r; ++k) {
          u64 count = 0;
          for (Id x : cc.members[i])
            for (Id y : cc.members[j])
              if (g->mul(x, y) == cc.reps[k]) ++count;
          CHECK(a[i][j][k] == count);
        }
    // Identity class multiplies trivially.
    for (std::uint32_t j = 0; j < r; ++j)
      for (std::uint32_t k = 0; k < r; ++k) CHECK(a[0][j][k] == (j == k ? 1 : 0));
    // Row mass: sum_k a[i][j][k] |C_k| = |C_i| |C_j|.
    for (std::uint32_t i = 0; i < r; ++i)
      for (std::uint32_t j = 0; j < r; ++j) {
        u64 mass = 0;
        for (std::uint32_t k = 0; k < r; ++k) mass += a[i][j][k] * cc.sizes[k];
        CHECK(mass == static_cast<u64>(cc.sizes[i]) * cc.sizes[j]);
      }
  }
}

TEST_CASE("cyclic group tables are the dual groups") {
  SUBCASE("order two, frozen rows") {
    GroupPtr g = cyclic_group(2);
    const CharTable& t = character_table(*g);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].values == std::vector<Cyclotomic>{cyc(1), cyc(1)});
    CHECK(t.rows[1].values == std::vector<Cyclotomic>{cyc(1), cyc(-1)});
    CHECK(verify_table(*g, t).ok);
  }
  for (u64 n : {4ull, 6ull, 12ull}) {
    CAPTURE(n);
    GroupPtr g = cyclic_group(n);
    const CharTable& t = character_table(*g);
    REQUIRE(t.rows.size() == n);
    CHECK(verify_table(*g, t).ok);
    const ConjClasses& cc = conjugacy_classes(*g);
    // Dual-group rows: chi_j(g^k) = zeta_n^(jk); element id k is the k-th
    // power of the generator in the cyclic realization.
    std::vector<Character> expected;
    for (u64 j = 0; j < n; ++j) {
      std::vector<Cyclotomic> vals;
      for (std::uint32_t c = 0; c < cc.count(); ++c)
        vals.push_back(Cyclotomic::root_of_unity(n, static_cast<i64>(j * cc.reps[c])));
      expected.push_back(make_class_function(*g, std::move(vals)));
    }
    CHECK(row_set_equal(t.rows, expected));
  }
}

TEST_CASE("direct-product tables are products of factor duals") {
  struct Factors {
    u64 a, b;
  };
  for (Factors f : {Factors{2, 2}, Factors{2, 3}}) {
    CAPTURE(f.a);
    CAPTURE(f.b);
    ProductResult pr = direct_product(cyclic_group(f.a), cyclic_group(f.b));
    GroupPtr g = pr.group;
    const CharTable& t = character_table(*g);
    REQUIRE(t.rows.size() == f.a * f.b);
    CHECK(verify_table(*g, t).ok);
    // Decompose each class representative as n * h to evaluate the dual pair.
    const ConjClasses& cc = conjugacy_classes(*g);
    Id ngen = pr.n_members[1];
    Id hgen = pr.h_members[1];
    std::vector<Character> expected;
    for (u64 s = 0; s < f.a; ++s)
      for (u64 u = 0; u < f.b; ++u) {
        std::vector<Cyclotomic> vals;
        for (std::uint32_t c = 0; c < cc.count(); ++c) {
          bool found = false;
          for (u64 i = 0; i < f.a && !found; ++i)
            for (u64 j = 0; j < f.b && !found; ++j)
              if (g->mul(g->pow(ngen, static_cast<i64>(i)), g->pow(hgen, static_cast<i64>(j))) ==
                  cc.reps[c]) {
                vals.push_back(Cyclotomic::root_of_unity(f.a, static_cast<i64>(s * i)) *
                               Cyclotomic::root_of_unity(f.b, static_cast<i64>(u * j)));
                found = true;
              }
          REQUIRE(found);
        }
        expected.push_back(make_class_function(*g, std::move(vals)));
      }
    CHECK(row_set_equal(t.rows, expected));
  }
}

TEST_CASE("frozen tables of small nonabelian groups") {
  SUBCASE("symmetric group on three points") {
    GroupPtr g = s3();
    const CharTable& t = character_table(*g);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].values == std::vector<Cyclotomic>{cyc(1), cyc(1), cyc(1)});
    CHECK(t.rows[1].values == std::vector<Cyclotomic>{cyc(1), cyc(-1), cyc(1)});
    CHECK(t.rows[2].values == std::vector<Cyclotomic>{cyc(2), cyc(0), cyc(-1)});
    CHECK(verify_table(*g, t).ok);
  }
  SUBCASE("quaternion group") {
    GroupPtr gl = gl2_3();
    GroupPtr q = q8(gl);
    const CharTable& t = character_table(*q);
    CHECK(table_degrees(t) == std::vector<u64>{1, 1, 1, 1, 2});
    CHECK(t.rows[4].values ==
          std::vector<Cyclotomic>{cyc(2), cyc(-2), cyc(0), cyc(0), cyc(0)});
    CHECK(verify_table(*q, t).ok);
  }
  SUBCASE("order twenty-one") {
    GroupPtr g = frob21();
    const CharTable& t = character_table(*g);
    CHECK(table_degrees(t) == std::vector<u64>{1, 1, 1, 3, 3});
    CHECK(verify_table(*g, t).ok);
    // The two degree-3 rows take the two Gauss-period values on the
    // order-seven classes (classes 3 and 4 in class order).
    Cyclotomic eta = Cyclotomic::from_root_sum(7, {{1, Rat(1)}, {2, Rat(1)}, {4, Rat(1)}});
    Cyclotomic etabar = Cyclotomic::from_root_sum(7, {{3, Rat(1)}, {5, Rat(1)}, {6, Rat(1)}});
    std::set<std::string> got, want = {eta.to_string(), etabar.to_string()};
    for (std::size_t i = 3; i < 5; ++i) {
      CHECK(t.rows[i].values[1] == cyc(0));
      CHECK(t.rows[i].values[2] == cyc(0));
      got.insert(t.rows[i].values[3].to_string());
    }
    CHECK(got == want);
    CHECK(eta * etabar == cyc(2));     // eta * etabar = 2 (norm of the period)
    CHECK(eta + etabar == cyc(-1));    // eta + etabar = -1
  }
  SUBCASE("two-by-two invertible matrices over the field of three elements") {
    GroupPtr g = gl2_3();
    const CharTable& t = character_table(*g);
    CHECK(table_degrees(t) == std::vector<u64>{1, 1, 2, 2, 2, 3, 3, 4});
    CHECK(verify_table(*g, t).ok);
    bool has_octic_value = false;
    for (const Character& row : t.rows)
      for (const Cyclotomic& v : row.values)
        if (v.conductor() == 8) has_octic_value = true;
    CHECK(has_octic_value);  // the faithful degree-2 rows live in Q(zeta_8)
  }
}

TEST_CASE("table degrees agree with the independent oracle") {
  GroupPtr gl = gl2_3();
  for (GroupPtr g : {s3(), frob21(), q8(gl), gl}) {
    CAPTURE(g->describe());
    CHECK(table_degree_counts(character_table(*g)) == regular_degree_counts(*g));
  }
}

TEST_CASE("verification names the violation in corrupted tables") {
  GroupPtr gl = gl2_3();
  const CharTable& good = character_table(*gl);
  REQUIRE(verify_table(*gl, good).ok);

  SUBCASE("perturbed value breaks row orthogonality") {
    CharTable bad = good;
    bad.rows[3].values[5] += cyc(1);
    TableVerification v = verify_table(*gl, bad);
    CHECK(!v.ok);
    CHECK(v.violation.find("row orthogonality") != std::string::npos);
  }
  SUBCASE("transposed nonabelian table is rejected") {
    GroupPtr g = s3();
    const CharTable& t = character_table(*g);
    CharTable bad = t;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 3; ++c) bad.rows[i].values[c] = t.rows[c].values[i];
    TableVerification v = verify_table(*g, bad);
    CHECK(!v.ok);
    CHECK(v.violation.find("principal") != std::string::npos);
  }
  SUBCASE("reordered rows violate canonical order") {
    GroupPtr g = s3();
    CharTable bad = character_table(*g);
    std::swap(bad.rows[1], bad.rows[2]);
    TableVerification v = verify_table(*g, bad);
    CHECK(!v.ok);
    CHECK(v.violation.find("canonical order") != std::string::npos);
  }
  SUBCASE("missing row is caught by the shape check") {
    CharTable bad = good;
    bad.rows.pop_back();
    TableVerification v = verify_table(*gl, bad);
    CHECK(!v.ok);
    CHECK(v.violation.find("row count") != std::string::npos);
  }
  SUBCASE("table of a different group is rejected") {
    GroupPtr g = frob21();
    TableVerification v = verify_table(*g, good);
    CHECK(!v.ok);
    CHECK(v.violation.find("different group") != std::string::npos);
  }
}

TEST_CASE("table construction is deterministic and cached") {
  GroupPtr a = gl2_3();
  GroupPtr b = gl2_3();  // independent instance, independent cache
  const CharTable& ta = character_table(*a);
  const CharTable& tb = character_table(*b);
  REQUIRE(ta.rows.size() == tb.rows.size());
  for (std::size_t i = 0; i < ta.rows.size(); ++i) CHECK(ta.rows[i].values == tb.rows[i].values);
  CHECK(&character_table(*a) == &ta);  // cached, same object on re-query
}

TEST_CASE("linear characters come from the abelianization") {
  GroupPtr gl = gl2_3();
  GroupPtr q = q8(gl);
  struct Case {
    GroupPtr g;
    u64 expected;
  };
  for (Case c : {Case{s3(), 2}, Case{frob21(), 3}, Case{gl, 2}, Case{q, 4}}) {
    CAPTURE(c.g->describe());
    const std::vector<Character>& lin = linear_characters(*c.g);
    u64 ab = c.g->order() / derived_subgroup(*c.g).size();
    CHECK(lin.size() == c.expected);
    CHECK(lin.size() == ab);
    const CharTable& t = character_table(*c.g);
    for (std::size_t i = 0; i < lin.size(); ++i) {
      CHECK(character_degree(lin[i]) == 1);
      CHECK(lin[i] == t.rows[i]);  // the degree-one prefix, in the same order
    }
  }
}

TEST_CASE("class functions are tied to their group") {
  GroupPtr g = s3();
  const CharTable& t = character_table(*g);
  CHECK(value_at_element(*g, t.rows[2], g->identity()) == cyc(2));
  // Value at a transposition (an order-2 element) is 0 for the degree-2 row.
  for (Id x = 0; x < g->order(); ++x)
    if (g->element_order(x) == 2) CHECK(value_at_element(*g, t.rows[2], x) == cyc(0));
  GroupPtr h = frob21();
  CHECK_THROWS_AS(value_at_element(*h, t.rows[0], 0), Error);
  CHECK_THROWS_AS(make_class_function(*g, {cyc(1)}), Error);  // wrong length
}
