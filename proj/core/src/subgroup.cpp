#include "pichar/subgroup.hpp"

#include <algorithm>
#include <set>

#include "pichar/classes.hpp"
#include "pichar/errors.hpp"

namespace pichar {

namespace {

// Union of the conjugacy classes meeting the given set; sorted. A subgroup
// generated by such a union is automatically normal.
Members class_saturation(const Group& G, const Members& seed) {
  const ConjClasses& cc = conjugacy_classes(G);
  std::vector<bool> hit(cc.count(), false);
  for (Id x : seed) hit[cc.class_of[x]] = true;
  Members out;
  for (std::uint32_t c = 0; c < cc.count(); ++c) {
    if (!hit[c]) continue;
    out.insert(out.end(), cc.members[c].begin(), cc.members[c].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Members join(const Group& G, const Members& a, const Members& b) {
  Members u;
  u.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  return generated_subgroup(G, u);
}

}  // namespace

Members generated_subgroup(const Group& G, const Members& seed) {
  Members sorted = seed;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Id> gens;
  std::vector<Id> have = {G.identity()};
  for (;;) {
    Id pick = 0;
    bool found = false;
    std::size_t hi = 0;
    for (Id m : sorted) {
      while (hi < have.size() && have[hi] < m) ++hi;
      if (hi >= have.size() || have[hi] != m) {
        pick = m;
        found = true;
        break;
      }
    }
    if (!found) return have;
    gens.push_back(pick);
    have = closure(G, gens);
  }
}

bool is_subgroup_members(const Group& G, const Members& m) {
  if (m.empty() || m[0] != G.identity()) return false;
  if (!std::is_sorted(m.begin(), m.end())) return false;
  if (m.back() >= G.order() || G.order() % m.size() != 0) return false;
  for (Id a : m) {
    for (Id b : m) {
      if (!std::binary_search(m.begin(), m.end(), G.mul(a, b))) return false;
    }
  }
  return true;
}

bool is_normal(const Group& G, const Members& m) {
  for (Id x : G.generator_ids()) {
    for (Id h : m) {
      if (!std::binary_search(m.begin(), m.end(), G.conj(h, x))) return false;
    }
  }
  return true;
}

Members normal_closure(const Group& G, const Members& seed) {
  return generated_subgroup(G, class_saturation(G, seed));
}

Members centralizer(const Group& G, Id g) {
  Members out;
  for (Id x = 0; x < G.order(); ++x) {
    if (G.mul(x, g) == G.mul(g, x)) out.push_back(x);
  }
  return out;
}

Members center(const Group& G) {
  Members out;
  const std::vector<Id>& gens = G.generator_ids();
  for (Id x = 0; x < G.order(); ++x) {
    bool central = true;
    for (Id g : gens) {
      if (G.mul(x, g) != G.mul(g, x)) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(x);
  }
  return out;
}

Members derived_subgroup(const Group& G) {
  const std::vector<Id>& gens = G.generator_ids();
  Members comms;
  for (Id a : gens)
    for (Id b : gens) comms.push_back(G.commutator(a, b));
  return normal_closure(G, comms);
}

Members derived_subgroup_of(const Group& G, const Members& m) {
  std::vector<Id> gens = small_generating_set(G, m);
  if (gens.empty()) return {G.identity()};
  Members comms;
  for (Id a : gens)
    for (Id b : gens) comms.push_back(G.commutator(a, b));
  // Normal closure inside the subgroup: close under conjugation by its
  // generators and under multiplication.
  Members cur = generated_subgroup(G, comms);
  for (;;) {
    Members extra;
    for (Id g : gens) {
      for (Id h : cur) {
        const Id c = G.conj(h, g);
        if (!std::binary_search(cur.begin(), cur.end(), c)) extra.push_back(c);
      }
    }
    if (extra.empty()) return cur;
    extra.insert(extra.end(), cur.begin(), cur.end());
    cur = generated_subgroup(G, extra);
  }
}

std::vector<Members> derived_series(const Group& G) {
  std::vector<Members> out;
  Members cur(G.order());
  for (Id x = 0; x < G.order(); ++x) cur[x] = x;
  out.push_back(cur);
  for (;;) {
    Members next = derived_subgroup_of(G, out.back());
    if (next.size() == out.back().size()) return out;
    out.push_back(std::move(next));
  }
}

bool is_solvable(const Group& G) {
  return G.analysis<bool>("is_solvable",
                          [&G]() { return derived_series(G).back().size() == 1; });
}

Members p_core(const Group& G, u64 p) {
  const ConjClasses& cc = conjugacy_classes(G);
  Members acc = {G.identity()};
  for (std::uint32_t c = 1; c < cc.count(); ++c) {
    u64 o = cc.rep_orders[c];
    while (o % p == 0) o /= p;
    if (o != 1) continue;  // rep order not a p-power
    if (std::binary_search(acc.begin(), acc.end(), cc.reps[c])) continue;
    Members ncl = normal_closure(G, {cc.reps[c]});
    u64 sz = ncl.size();
    while (sz % p == 0) sz /= p;
    if (sz != 1) continue;  // closure not a p-group
    acc = join(G, acc, ncl);
  }
  return acc;
}

Members fitting_subgroup(const Group& G) {
  return G.analysis<Members>("fitting_subgroup", [&G]() {
    Members acc = {G.identity()};
    for (u64 p : prime_divisors(G.order())) acc = join(G, acc, p_core(G, p));
    return acc;
  });
}

bool is_nilpotent(const Group& G) { return fitting_subgroup(G).size() == G.order(); }

u64 fitting_height(const Group& G) {
  PICHAR_CHECK(is_solvable(G), ErrorKind::InvalidInput,
               "fitting height requires a solvable group");
  u64 height = 0;
  GroupPtr cur = G.shared_from_this();
  while (cur->order() > 1) {
    Members fit = fitting_subgroup(*cur);
    PICHAR_INTERNAL(fit.size() > 1, "solvable group must have nontrivial fitting subgroup");
    ++height;
    if (fit.size() == cur->order()) break;
    cur = quotient_group(cur, fit).group;
  }
  return height;
}

const std::vector<Members>& normal_subgroups(const Group& G) {
  return G.analysis<std::vector<Members>>("normal_subgroups", [&G]() {
    const ConjClasses& cc = conjugacy_classes(G);
    // Seed: closures of single classes (every minimal step), then join to a
    // fixpoint. Every normal subgroup is a join of single-class closures.
    std::set<Members> all;
    all.insert(Members{G.identity()});
    std::vector<Members> fresh;
    for (std::uint32_t c = 1; c < cc.count(); ++c) {
      Members ncl = normal_closure(G, {cc.reps[c]});
      if (all.insert(ncl).second) fresh.push_back(std::move(ncl));
    }
    std::vector<Members> seeds = fresh;
    while (!fresh.empty()) {
      std::vector<Members> next;
      for (const Members& a : fresh) {
        for (const Members& s : seeds) {
          if (std::includes(a.begin(), a.end(), s.begin(), s.end())) continue;
          Members j = join(G, a, s);
          if (all.insert(j).second) next.push_back(std::move(j));
        }
      }
      fresh = std::move(next);
    }
    std::vector<Members> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), [](const Members& a, const Members& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  });
}

std::vector<Members> minimal_normal_subgroups(const Group& G) {
  const ConjClasses& cc = conjugacy_classes(G);
  std::set<Members> closures;
  for (std::uint32_t c = 1; c < cc.count(); ++c) {
    closures.insert(normal_closure(G, {cc.reps[c]}));
  }
  std::vector<Members> cand(closures.begin(), closures.end());
  std::vector<Members> out;
  for (const Members& a : cand) {
    bool minimal = true;
    for (const Members& b : cand) {
      if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const Members& a, const Members& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<Members> maximal_normal_subgroups(const Group& G) {
  const std::vector<Members>& all = normal_subgroups(G);
  std::vector<Members> out;
  for (const Members& a : all) {
    if (a.size() == G.order()) continue;
    bool maximal = true;
    for (const Members& b : all) {
      if (b.size() == G.order() || b.size() <= a.size()) continue;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(a);
  }
  return out;
}

bool is_frobenius_with_kernel(const Group& G, const Members& kernel) {
  if (kernel.size() <= 1 || kernel.size() >= G.order()) return false;
  if (!is_subgroup_members(G, kernel)) return false;
  if (!is_normal(G, kernel)) return false;
  for (Id x : kernel) {
    if (x == G.identity()) continue;
    for (Id y = 0; y < G.order(); ++y) {
      if (G.mul(x, y) == G.mul(y, x) &&
          !std::binary_search(kernel.begin(), kernel.end(), y)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace pichar
