#include "pichar/charops.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "pichar/modlinalg.hpp"

namespace pichar {
namespace {

void check_owner(const Group& G, const ClassFunction& f, const char* what) {
  PICHAR_CHECK(f.group_digest == G.digest(), ErrorKind::InvalidInput,
               std::string(what) + " belongs to a different group");
  PICHAR_INTERNAL(f.values.size() == conjugacy_classes(G).count(),
                  "class-function length differs from the class count");
}

/// Element map of a subgroup view into its ambient group, validated to be a
/// view of exactly this group object.
std::vector<Id> view_parent_ids(const Group& G, const Group& H) {
  PICHAR_CHECK(view_parent(H) == &G, ErrorKind::InvalidInput,
               "subgroup is not a view of the given group");
  std::vector<Id> par(H.order());
  for (Id h = 0; h < H.order(); ++h) par[h] = H.data(h)[0];
  return par;
}

/// The least prime that is 1 mod exponent(G) and exceeds 2 sqrt(|G|): every
/// character value embeds in F_ell and degrees/multiplicities stay below
/// ell/2.
u64 value_lift_prime(const Group& G) {
  u64 bound = 1;
  while (bound * bound <= 4 * G.order()) ++bound;
  u64 ell = least_prime_in_progression(G.exponent(), bound > 1 ? bound - 1 : 1);
  PICHAR_CHECK(ell < (1u << 20), ErrorKind::CapExceeded,
               "character-value modulus exceeds the supported modular-arithmetic bound");
  return ell;
}

Cyclotomic cyc_pow(const Cyclotomic& v, u64 k) {
  Cyclotomic acc = Cyclotomic::from_int(1);
  Cyclotomic base = v;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

}  // namespace

ClassFunction restrict_to(const Group& G, const ClassFunction& f, const Group& H) {
  check_owner(G, f, "class function");
  std::vector<Id> par = view_parent_ids(G, H);
  const ConjClasses& gc = conjugacy_classes(G);
  const ConjClasses& hc = conjugacy_classes(H);
  ClassFunction out;
  out.group_digest = H.digest();
  out.values.reserve(hc.count());
  for (std::uint32_t d = 0; d < hc.count(); ++d)
    out.values.push_back(f.values[gc.class_of[par[hc.reps[d]]]]);
  return out;
}

ClassFunction induce_from(const Group& G, const Group& H, const ClassFunction& theta) {
  check_owner(H, theta, "class function");
  std::vector<Id> par = view_parent_ids(G, H);
  const ConjClasses& gc = conjugacy_classes(G);
  const ConjClasses& hc = conjugacy_classes(H);
  ClassFunction out;
  out.group_digest = G.digest();
  out.values.assign(gc.count(), Cyclotomic());
  for (std::uint32_t d = 0; d < hc.count(); ++d) {
    if (theta.values[d].is_zero()) continue;
    std::uint32_t c = gc.class_of[par[hc.reps[d]]];
    // |C_G(g)| / |C_H(h)| = |G| |h^H| / (|g^G| |H|), exact.
    Rat weight = Rat(static_cast<unsigned long>(G.order())) *
                 Rat(static_cast<unsigned long>(hc.sizes[d])) /
                 (Rat(static_cast<unsigned long>(gc.sizes[c])) *
                  Rat(static_cast<unsigned long>(H.order())));
    out.values[c] += theta.values[d].scaled(weight);
  }
  return out;
}

Rat inner_product(const Group& G, const ClassFunction& a, const ClassFunction& b) {
  check_owner(G, a, "left class function");
  check_owner(G, b, "right class function");
  const ConjClasses& cc = conjugacy_classes(G);
  Cyclotomic acc;
  for (std::uint32_t c = 0; c < cc.count(); ++c) {
    if (a.values[c].is_zero() || b.values[c].is_zero()) continue;
    acc += (a.values[c] * b.values[c].conj()).scaled(Rat(static_cast<unsigned long>(cc.sizes[c])));
  }
  Cyclotomic v = acc.scaled(Rat(1) / Rat(static_cast<unsigned long>(G.order())));
  PICHAR_CHECK(v.is_rational(), ErrorKind::InvalidInput, "inner product is not rational");
  return v.rational_value();
}

std::vector<Constituent> constituents(const Group& G, const ClassFunction& f) {
  check_owner(G, f, "class function");
  const CharTable& t = character_table(G);
  std::vector<Constituent> out;
  for (std::uint32_t i = 0; i < t.row_count(); ++i) {
    Rat m = inner_product(G, f, t.rows[i]);
    PICHAR_CHECK(rat_is_integer(m) && m >= 0, ErrorKind::InvalidInput,
                 "class function is not a nonnegative integral combination of irreducible "
                 "characters");
    if (m > 0) out.push_back({i, static_cast<u64>(rat_to_i64(m))});
  }
  return out;
}

ClassFunction cf_product(const Group& G, const ClassFunction& a, const ClassFunction& b) {
  check_owner(G, a, "left class function");
  check_owner(G, b, "right class function");
  ClassFunction out;
  out.group_digest = G.digest();
  out.values.reserve(a.values.size());
  for (std::size_t c = 0; c < a.values.size(); ++c) out.values.push_back(a.values[c] * b.values[c]);
  return out;
}

ClassFunction inflate(const Group& G, const std::vector<Id>& projection, const Group& Q,
                      const ClassFunction& f) {
  check_owner(Q, f, "class function");
  PICHAR_CHECK(projection.size() == G.order(), ErrorKind::InvalidInput,
               "projection length differs from the group order");
  PICHAR_CHECK(projection[0] == Q.identity(), ErrorKind::InvalidInput,
               "projection does not send identity to identity");
  const ConjClasses& gc = conjugacy_classes(G);
  const ConjClasses& qc = conjugacy_classes(Q);
  ClassFunction out;
  out.group_digest = G.digest();
  out.values.reserve(gc.count());
  for (std::uint32_t c = 0; c < gc.count(); ++c) {
    Id q = projection[gc.reps[c]];
    PICHAR_CHECK(q < Q.order(), ErrorKind::InvalidInput, "projection image out of range");
    out.values.push_back(f.values[qc.class_of[q]]);
  }
  return out;
}

Members char_kernel(const Group& G, const ClassFunction& f) {
  check_owner(G, f, "class function");
  const ConjClasses& cc = conjugacy_classes(G);
  Members ker;
  for (std::uint32_t c = 0; c < cc.count(); ++c)
    if (f.values[c] == f.values[0])
      ker.insert(ker.end(), cc.members[c].begin(), cc.members[c].end());
  std::sort(ker.begin(), ker.end());
  return ker;
}

Character det_character(const Group& G, const Character& chi) {
  check_owner(G, chi, "character");
  u64 d = character_degree(chi);
  const ConjClasses& cc = conjugacy_classes(G);
  Character det;
  det.group_digest = G.digest();
  det.values.assign(cc.count(), Cyclotomic::from_int(1));
  if (d > 1) {
    u64 ell = value_lift_prime(G);
    u64 w = least_primitive_root(ell);
    for (std::uint32_t k = 1; k < cc.count(); ++k) {
      u64 e = cc.rep_orders[k];
      std::vector<u64> p(d + 1, 0);
      for (u64 t = 1; t <= d; ++t)
        p[t] = residue_mod(chi.values[class_power(G, cc, k, static_cast<i64>(t))], ell, w);
      u64 we = mod_pow(w, (ell - 1) / e, ell);
      std::vector<u64> mult = unity_root_multiplicities(p, e, we, ell);
      PICHAR_CHECK(!mult.empty(), ErrorKind::InvalidInput,
                   "eigenvalue reconstruction failed: the input is not a character");
      // Certify the reconstruction against the exact value.
      std::vector<std::pair<i64, Rat>> terms;
      u64 exponent_sum = 0;
      for (u64 j = 0; j < e; ++j)
        if (mult[j] > 0) {
          terms.emplace_back(static_cast<i64>(j), Rat(static_cast<long>(mult[j])));
          exponent_sum = (exponent_sum + j * mult[j]) % e;
        }
      PICHAR_CHECK(Cyclotomic::from_root_sum(e, terms) == chi.values[k],
                   ErrorKind::InvalidInput,
                   "eigenvalue reconstruction inconsistent with the character value");
      det.values[k] = Cyclotomic::root_of_unity(e, static_cast<i64>(exponent_sum));
    }
  } else {
    det = chi;
  }
  const std::vector<Character>& lin = linear_characters(G);
  bool is_linear = false;
  for (const Character& l : lin)
    if (l.values == det.values) is_linear = true;
  PICHAR_CHECK(is_linear, ErrorKind::InvalidInput,
               "determinant reconstruction did not produce a linear character of the group");
  return det;
}

u64 determinantal_order(const Group& G, const Character& lambda) {
  check_owner(G, lambda, "character");
  PICHAR_CHECK(character_degree(lambda) == 1, ErrorKind::InvalidInput,
               "determinantal order requires a linear character");
  u64 order = 1;
  for (const Cyclotomic& v : lambda.values) {
    u64 n = v.conductor();
    u64 root_order = 0;
    for (u64 cand : {n, 2 * n}) {
      if (cyc_pow(v, cand).is_one()) {
        root_order = cand;
        break;
      }
    }
    PICHAR_CHECK(root_order != 0, ErrorKind::InvalidInput,
                 "linear character value is not a root of unity");
    order = lcm_u64(order, root_order);
  }
  return order;
}

Members inertia_group(const Group& G, const Group& N, const ClassFunction& theta) {
  check_owner(N, theta, "class function");
  std::vector<Id> par = view_parent_ids(G, N);
  const ConjClasses& hc = conjugacy_classes(N);
  const Id invalid = static_cast<Id>(G.order());
  std::vector<Id> idx(G.order(), invalid);
  for (Id h = 0; h < N.order(); ++h) idx[par[h]] = h;
  // theta is N-conjugation invariant, so the inertia group is a union of
  // cosets of N: test one representative per coset of the quotient.
  GroupPtr self = G.shared_from_this();
  Members sorted_par = par;
  std::sort(sorted_par.begin(), sorted_par.end());
  QuotientResult qr = quotient_group(self, sorted_par);  // errors if not normal
  std::vector<Id> leader(qr.group->order(), invalid);
  for (Id g = 0; g < G.order(); ++g)
    if (leader[qr.projection[g]] == invalid) leader[qr.projection[g]] = g;
  std::vector<bool> pass(qr.group->order(), false);
  for (Id q = 0; q < qr.group->order(); ++q) {
    Id g = leader[q];
    Id ginv = G.inv(g);
    bool ok = true;
    for (std::uint32_t dd = 0; dd < hc.count() && ok; ++dd) {
      Id conj = G.mul(G.mul(g, par[hc.reps[dd]]), ginv);
      Id h = idx[conj];
      PICHAR_INTERNAL(h != invalid, "conjugate left the normal subgroup");
      if (theta.values[hc.class_of[h]] != theta.values[dd]) ok = false;
    }
    pass[q] = ok;
  }
  Members t;
  for (Id g = 0; g < G.order(); ++g)
    if (pass[qr.projection[g]]) t.push_back(g);
  PICHAR_INTERNAL(G.order() % t.size() == 0, "inertia member count must divide the group order");
  return t;
}

std::optional<std::uint32_t> extends_to(const Group& G, const Group& N,
                                        const ClassFunction& theta) {
  check_owner(N, theta, "class function");
  std::vector<Id> par = view_parent_ids(G, N);
  const ConjClasses& gc = conjugacy_classes(G);
  const ConjClasses& hc = conjugacy_classes(N);
  std::vector<std::uint32_t> fus(hc.count());
  for (std::uint32_t d = 0; d < hc.count(); ++d) fus[d] = gc.class_of[par[hc.reps[d]]];
  const CharTable& t = character_table(G);
  for (std::uint32_t i = 0; i < t.row_count(); ++i) {
    if (t.rows[i].values[0] != theta.values[0]) continue;
    bool all = true;
    for (std::uint32_t d = 0; d < hc.count() && all; ++d)
      if (t.rows[i].values[fus[d]] != theta.values[d]) all = false;
    if (all) return i;
  }
  return std::nullopt;
}

}  // namespace pichar
