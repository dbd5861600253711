#include "pichar/subgroup_enum.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pichar/errors.hpp"
#include "pichar/modlinalg.hpp"

namespace pichar {

namespace {

Members conjugate_set(const Group& G, const Members& m, Id x) {
  Members out;
  out.reserve(m.size());
  for (Id h : m) out.push_back(G.conj(h, x));
  std::sort(out.begin(), out.end());
  return out;
}

bool members_less(const Members& a, const Members& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Returns the prime p if N is elementary abelian of exponent p, else 0.
u64 elementary_abelian_exponent(const Group& G, const Members& N) {
  if (N.size() < 2) return 0;
  const u64 p = G.element_order(N[1]);
  if (!is_prime_u64(p)) return 0;
  u64 size = N.size();
  while (size % p == 0) size /= p;
  if (size != 1) return 0;
  for (Id x : N) {
    if (x != G.identity() && G.element_order(x) != p) return 0;
  }
  for (Id a : N) {
    for (Id b : N) {
      if (G.mul(a, b) != G.mul(b, a)) return 0;
    }
  }
  return p;
}

std::vector<Members> maximal_elements(std::vector<Members> subs, u64 group_order) {
  std::vector<Members> out;
  for (const Members& a : subs) {
    if (a.size() == group_order) continue;
    bool maximal = true;
    for (const Members& b : subs) {
      if (b.size() == group_order || b.size() <= a.size()) continue;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(a);
  }
  return out;
}

std::vector<Members> maximal_subgroups_compute(const GroupPtr& Gp);

}  // namespace

CanonicalSubgroup conjugacy_canonical_subgroup(const Group& G, const Members& m) {
  std::map<Members, Id> orbit;
  orbit.emplace(m, G.identity());
  std::vector<const Members*> queue{&orbit.begin()->first};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Members cur = *queue[qi];
    const Id via = orbit.at(cur);
    for (Id g : G.generator_ids()) {
      Members img = conjugate_set(G, cur, g);
      auto [it, fresh] = orbit.emplace(std::move(img), G.mul(via, g));
      if (fresh) queue.push_back(&it->first);
    }
  }
  CanonicalSubgroup out;
  out.members = orbit.begin()->first;
  out.conjugator = orbit.begin()->second;
  return out;
}

std::vector<Members> subgroup_conjugates(const Group& G, const Members& m) {
  std::set<Members> orbit{m};
  std::vector<const Members*> queue{&*orbit.begin()};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Members cur = *queue[qi];
    for (Id g : G.generator_ids()) {
      auto [it, fresh] = orbit.insert(conjugate_set(G, cur, g));
      if (fresh) queue.push_back(&*it);
    }
  }
  return std::vector<Members>(orbit.begin(), orbit.end());
}

const std::vector<Members>& all_subgroups(const Group& G) {
  return G.analysis<std::vector<Members>>("all_subgroups", [&G]() {
    PICHAR_CHECK(G.order() <= kExhaustiveTier, ErrorKind::TierExceeded,
                 "exhaustive subgroup enumeration exceeds the supported tier");
    std::set<Members> cyc;
    for (Id x = 1; x < G.order(); ++x) cyc.insert(closure(G, {x}));
    std::vector<Members> cyclics(cyc.begin(), cyc.end());

    std::set<Members> all;
    all.insert(Members{G.identity()});
    std::vector<Members> fresh;
    for (const Members& c : cyclics) {
      if (all.insert(c).second) fresh.push_back(c);
    }
    // Every subgroup is a join of cyclic subgroups, so joining the frontier
    // with every cyclic subgroup to a fixpoint is exhaustive.
    while (!fresh.empty()) {
      std::vector<Members> next;
      for (const Members& h : fresh) {
        for (const Members& c : cyclics) {
          if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
          Members u;
          u.reserve(h.size() + c.size());
          std::set_union(h.begin(), h.end(), c.begin(), c.end(), std::back_inserter(u));
          Members j = generated_subgroup(G, u);
          if (all.insert(j).second) next.push_back(std::move(j));
        }
      }
      fresh = std::move(next);
    }
    std::vector<Members> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), members_less);
    return out;
  });
}

const std::vector<Members>& subgroups_up_to_conjugacy(const Group& G) {
  return G.analysis<std::vector<Members>>("subgroups_up_to_conjugacy", [&G]() {
    const std::vector<Members>& all = all_subgroups(G);
    std::set<Members> seen;
    std::vector<Members> out;
    for (const Members& s : all) {
      if (seen.count(s)) continue;
      // Ascending sweep: the first unseen member of each orbit is its least
      // element, i.e. the canonical representative.
      out.push_back(s);
      for (Members& c : subgroup_conjugates(G, s)) seen.insert(std::move(c));
    }
    std::sort(out.begin(), out.end(), members_less);
    return out;
  });
}

std::vector<Members> complements_of_elementary_abelian(const Group& G, const Members& N) {
  PICHAR_CHECK(is_normal(G, N), ErrorKind::InvalidInput,
               "complement search requires a normal subgroup");
  const u64 n = G.order();
  if (N.size() == 1) {
    Members whole(n);
    for (Id x = 0; x < n; ++x) whole[x] = x;
    return {whole};
  }
  if (N.size() == n) return {Members{G.identity()}};

  const u64 p = elementary_abelian_exponent(G, N);
  PICHAR_CHECK(p != 0, ErrorKind::InvalidInput,
               "complement search requires an elementary abelian normal subgroup");

  // Basis and F_p coordinates for N.
  const std::vector<Id> basis = small_generating_set(G, N);
  const std::size_t k = basis.size();
  {
    u64 expect = 1;
    for (std::size_t i = 0; i < k; ++i) expect *= p;
    PICHAR_INTERNAL(expect == N.size(), "independent generating set expected");
  }
  std::map<Id, std::vector<u64>> coord_of;
  {
    // Odometer over coordinate tuples; product of basis powers.
    std::vector<u64> tup(k, 0);
    for (;;) {
      Id e = G.identity();
      for (std::size_t i = 0; i < k; ++i) e = G.mul(e, G.pow(basis[i], static_cast<i64>(tup[i])));
      coord_of[e] = tup;
      std::size_t d = 0;
      while (d < k && ++tup[d] == p) {
        tup[d] = 0;
        ++d;
      }
      if (d == k) break;
    }
    PICHAR_INTERNAL(coord_of.size() == N.size(), "coordinate map must cover N");
  }
  auto elem_of = [&](const std::vector<u64>& tup) {
    Id e = G.identity();
    for (std::size_t i = 0; i < k; ++i) e = G.mul(e, G.pow(basis[i], static_cast<i64>(tup[i])));
    return e;
  };

  QuotientResult qr = quotient_group(G.shared_from_this(), N);
  const Group& Q = *qr.group;
  const u64 qn = Q.order();

  // Transversal: least preimage per coset.
  std::vector<Id> t(qn, 0);
  std::vector<bool> have_t(qn, false);
  for (Id x = 0; x < n; ++x) {
    const Id q = qr.projection[x];
    if (!have_t[q]) {
      have_t[q] = true;
      t[q] = x;
    }
  }

  const std::vector<Id>& qgens = Q.generator_ids();
  const std::size_t r = qgens.size();
  const std::size_t unknowns = k * r;

  // Conjugation matrices on N for each transversal generator image.
  std::vector<ModMatrix> T(r);
  for (std::size_t j = 0; j < r; ++j) {
    T[j] = ModMatrix(p, k, k);
    const Id tj = t[qgens[j]];
    for (std::size_t i = 0; i < k; ++i) {
      const std::vector<u64>& col = coord_of.at(G.conj(basis[i], tj));
      for (std::size_t row = 0; row < k; ++row) T[j].at(row, i) = col[row];
    }
  }

  // Affine data per coset: offset c (k) and matrix A (k x unknowns) with
  // N-part(q) = c_q + A_q x for the stacked unknown generator offsets x.
  std::vector<std::vector<u64>> cvec(qn);
  std::vector<ModMatrix> avec(qn);
  std::vector<bool> visited(qn, false);
  AffineSystem sys(p, unknowns);

  cvec[Q.identity()] = std::vector<u64>(k, 0);
  avec[Q.identity()] = ModMatrix(p, k, unknowns);
  visited[Q.identity()] = true;
  std::vector<Id> order{Q.identity()};

  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const Id a = order[qi];
    for (std::size_t j = 0; j < r; ++j) {
      const Id b = Q.mul(a, qgens[j]);
      // t(b)^{-1} t(a) t(q_j) lies in N; its coordinates are the constant f.
      const Id felem = G.mul(G.inv(t[b]), G.mul(t[a], t[qgens[j]]));
      PICHAR_INTERNAL(coord_of.count(felem) != 0, "transversal defect must lie in N");
      const std::vector<u64>& f = coord_of.at(felem);

      std::vector<u64> cnew(k);
      {
        std::vector<u64> tc = mat_vec(T[j], cvec[a]);
        for (std::size_t i = 0; i < k; ++i) cnew[i] = (f[i] + tc[i]) % p;
      }
      ModMatrix anew = mat_mul(T[j], avec[a]);
      for (std::size_t i = 0; i < k; ++i) {
        anew.at(i, j * k + i) = (anew.at(i, j * k + i) + 1) % p;
      }

      if (!visited[b]) {
        visited[b] = true;
        cvec[b] = std::move(cnew);
        avec[b] = std::move(anew);
        order.push_back(b);
      } else {
        for (std::size_t i = 0; i < k; ++i) {
          std::vector<u64> row(unknowns);
          for (std::size_t u = 0; u < unknowns; ++u) {
            row[u] = (avec[b].at(i, u) + p - anew.at(i, u)) % p;
          }
          const u64 rhs = (cnew[i] + p - cvec[b][i]) % p;
          if (!sys.add(row, rhs)) return {};
        }
      }
    }
  }
  if (!sys.consistent()) return {};

  const std::vector<u64> part = sys.particular();
  const std::vector<std::vector<u64>> null = sys.nullspace();
  const std::size_t d = null.size();
  {
    double count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= static_cast<double>(p);
    PICHAR_CHECK(count <= 20000.0, ErrorKind::TierExceeded,
                 "complement family too large to enumerate");
  }

  std::vector<Members> out;
  std::vector<u64> sel(d, 0);
  for (;;) {
    std::vector<u64> x = part;
    for (std::size_t i = 0; i < d; ++i) {
      if (sel[i] == 0) continue;
      for (std::size_t u = 0; u < unknowns; ++u) {
        x[u] = (x[u] + sel[i] * null[i][u]) % p;
      }
    }
    Members c;
    c.reserve(qn);
    std::vector<u64> nq(k);
    for (Id q = 0; q < qn; ++q) {
      for (std::size_t i = 0; i < k; ++i) {
        u64 acc = cvec[q][i];
        const u64* arow = &avec[q].a[i * unknowns];
        for (std::size_t u = 0; u < unknowns; ++u) acc += arow[u] * x[u];
        nq[i] = acc % p;
      }
      c.push_back(G.mul(t[q], elem_of(nq)));
    }
    std::sort(c.begin(), c.end());
    PICHAR_INTERNAL(c.size() == qn && std::adjacent_find(c.begin(), c.end()) == c.end(),
                    "complement must have one member per coset");
    out.push_back(std::move(c));

    std::size_t i = 0;
    while (i < d && ++sel[i] == p) sel[i++] = 0;
    if (i == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Members> maximal_subgroups_compute(const GroupPtr& Gp) {
  const Group& G = *Gp;
  const u64 n = G.order();
  std::vector<Members> out;
  if (n == 1) return out;

  const std::vector<Members> mins = minimal_normal_subgroups(G);
  PICHAR_INTERNAL(!mins.empty(), "nontrivial group needs a minimal normal subgroup");
  const Members& N = mins.front();

  if (N.size() == n) {
    // No proper nontrivial normal subgroup. Simple abelian means prime order
    // with only the trivial subgroup maximal; otherwise fall back to the
    // exhaustive tier.
    if (is_prime_u64(n)) {
      out.push_back(Members{G.identity()});
      return out;
    }
    const std::vector<Members>& reps = subgroups_up_to_conjugacy(G);
    std::vector<Members> all;
    for (const Members& s : reps) {
      for (Members& c : subgroup_conjugates(G, s)) all.push_back(std::move(c));
    }
    return maximal_elements(std::move(all), n);
  }

  if (elementary_abelian_exponent(G, N) == 0) {
    // Non-elementary chief factor (non-solvable layer): exhaustive fallback.
    const std::vector<Members>& reps = subgroups_up_to_conjugacy(G);
    std::vector<Members> all;
    for (const Members& s : reps) {
      for (Members& c : subgroup_conjugates(G, s)) all.push_back(std::move(c));
    }
    return maximal_elements(std::move(all), n);
  }

  QuotientResult qr = quotient_group(Gp, N);
  // Maximal subgroups either contain N (preimages of maximals of G/N) or
  // complement it (N elementary abelian minimal normal forces M cap N = 1).
  for (const Members& mq : maximal_subgroups(*qr.group)) {
    Members pre;
    pre.reserve(mq.size() * N.size());
    for (Id x = 0; x < n; ++x) {
      if (std::binary_search(mq.begin(), mq.end(), qr.projection[x])) pre.push_back(x);
    }
    out.push_back(std::move(pre));
  }
  for (Members& c : complements_of_elementary_abelian(G, N)) out.push_back(std::move(c));

  std::sort(out.begin(), out.end(), [](const Members& a, const Members& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

}  // namespace

const std::vector<Members>& maximal_subgroups(const Group& G) {
  return G.analysis<std::vector<Members>>("maximal_subgroups", [&G]() {
    return maximal_subgroups_compute(G.shared_from_this());
  });
}

}  // namespace pichar
