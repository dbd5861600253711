#include "pichar/pitheory.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>

#include "descent_util.hpp"
#include "pichar/classes.hpp"
#include "pichar/modlinalg.hpp"
#include "pichar/subgroup.hpp"
#include "pichar/subgroup_enum.hpp"

namespace pichar {

// ---------------------------------------------------------------------------
// Prime sets

PrimeSet::PrimeSet(std::vector<u64> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
  for (u64 p : primes_)
    PICHAR_CHECK(is_prime_u64(p), ErrorKind::InvalidInput,
                 "prime-set entry " + std::to_string(p) + " is not prime");
}

bool PrimeSet::contains(u64 p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PrimeSet::is_pi_number(u64 n) const { return part(n) == n; }

u64 PrimeSet::part(u64 n) const {
  PICHAR_CHECK(n >= 1, ErrorKind::InvalidInput, "the supported part of zero is undefined");
  u64 out = 1;
  for (u64 p : primes_) {
    while (n % p == 0) {
      n /= p;
      out *= p;
    }
  }
  return out;
}

u64 PrimeSet::coprime_part(u64 n) const { return n / part(n); }

std::string PrimeSet::key() const {
  std::string s;
  for (u64 p : primes_) {
    if (!s.empty()) s += ',';
    s += std::to_string(p);
  }
  return s;
}

PrimeSet pi_complement(const Group& G, const PrimeSet& pi) {
  std::vector<u64> out;
  for (u64 p : prime_divisors(G.order()))
    if (!pi.contains(p)) out.push_back(p);
  return PrimeSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Partial characters

u64 partial_degree(const PartialCharacter& phi) {
  PICHAR_CHECK(!phi.values.empty(), ErrorKind::InvalidInput, "partial character has no values");
  const Cyclotomic& v = phi.values[0];
  PICHAR_CHECK(v.is_rational() && rat_is_integer(v.rational_value()) && v.rational_value() > 0,
               ErrorKind::InvalidInput, "partial-character degree is not a positive integer");
  return static_cast<u64>(rat_to_i64(v.rational_value()));
}

const std::vector<std::uint32_t>& pi_classes(const Group& G, const PrimeSet& pi) {
  return G.analysis<std::vector<std::uint32_t>>("pi_classes:" + pi.key(), [&G, &pi] {
    const ConjClasses& cc = conjugacy_classes(G);
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < cc.count(); ++c)
      if (pi.is_pi_number(cc.rep_orders[c])) out.push_back(c);
    return out;
  });
}

PartialCharacter restrict_pi(const Group& G, const ClassFunction& f, const PrimeSet& pi) {
  PICHAR_CHECK(f.group_digest == G.digest(), ErrorKind::InvalidInput,
               "class function belongs to a different group");
  PICHAR_INTERNAL(f.values.size() == conjugacy_classes(G).count(),
                  "class-function length differs from the class count");
  PartialCharacter out;
  out.group_digest = G.digest();
  out.pi = pi.primes();
  const std::vector<std::uint32_t>& pcls = pi_classes(G, pi);
  out.values.reserve(pcls.size());
  for (std::uint32_t c : pcls) out.values.push_back(f.values[c]);
  return out;
}

// ---------------------------------------------------------------------------
// Internal helpers

namespace {

constexpr std::uint32_t kNoPos = std::numeric_limits<std::uint32_t>::max();
constexpr unsigned kMaxDecisionRetries = 8;

/// Lexicographic three-way comparison under the table's value order.
int values_compare(const std::vector<Cyclotomic>& a, const std::vector<Cyclotomic>& b) {
  PICHAR_INTERNAL(a.size() == b.size(), "comparing value vectors of different lengths");
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = table_value_compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

/// A prime l with l = 1 (mod exp(G)) and l > bound, so every character value
/// of G has a residue and any multiplicity up to `bound` is recovered exactly
/// from its residue. `retry` steps to the next such prime for rerolls when a
/// reduced system degenerates.
u64 decision_prime(const Group& G, u64 bound, unsigned retry) {
  u64 ell = least_prime_in_progression(G.exponent(), bound);
  for (unsigned i = 0; i < retry; ++i) ell = least_prime_in_progression(G.exponent(), ell);
  PICHAR_CHECK(ell < (1u << 20), ErrorKind::CapExceeded,
               "decision modulus exceeds the supported modular-arithmetic bound");
  return ell;
}

/// Degree-1 irreducible partial characters: the distinct restrictions of the
/// linear characters, in value order, each with its least lift. Computable
/// without the full character table; when the basis exists these coincide
/// with its degree-1 prefix (certified there).
struct LinearPartials {
  std::vector<std::vector<Cyclotomic>> values;
  std::vector<std::uint32_t> lifts;
};

const LinearPartials& linear_partials(const Group& G, const PrimeSet& pi) {
  return G.analysis<LinearPartials>("pi_linear_restrictions:" + pi.key(), [&G, &pi] {
    const std::vector<Character>& lins = linear_characters(G);
    const std::vector<std::uint32_t>& pcls = pi_classes(G, pi);
    std::vector<std::pair<std::vector<Cyclotomic>, std::uint32_t>> items;
    items.reserve(lins.size());
    for (std::uint32_t j = 0; j < lins.size(); ++j) {
      std::vector<Cyclotomic> v;
      v.reserve(pcls.size());
      for (std::uint32_t c : pcls) v.push_back(lins[j].values[c]);
      items.emplace_back(std::move(v), j);
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      int c = values_compare(a.first, b.first);
      if (c != 0) return c < 0;
      return a.second < b.second;
    });
    LinearPartials out;
    for (auto& [v, j] : items) {
      if (!out.values.empty() && out.values.back() == v) continue;
      out.values.push_back(std::move(v));
      out.lifts.push_back(j);
    }
    return out;
  });
}

/// True when the x-weighted sum of the given value vectors equals the target
/// pointwise (exact cyclotomic arithmetic).
bool combination_matches(const std::vector<const std::vector<Cyclotomic>*>& cols,
                         const std::vector<u64>& x, const std::vector<Cyclotomic>& target) {
  for (std::size_t c = 0; c < target.size(); ++c) {
    Cyclotomic acc;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (x[j] == 0) continue;
      acc += (*cols[j])[c].scaled(Rat(static_cast<unsigned long>(x[j])));
    }
    if (!(acc == target[c])) return false;
  }
  return true;
}

std::uint32_t row_of(const Group& G, const Character& chi) {
  PICHAR_CHECK(chi.group_digest == G.digest(), ErrorKind::InvalidInput,
               "character belongs to a different group");
  const CharTable& t = character_table(G);
  for (std::uint32_t i = 0; i < t.row_count(); ++i)
    if (t.rows[i].values == chi.values) return i;
  PICHAR_CHECK(false, ErrorKind::InvalidInput,
               "character is not an irreducible row of the group's table");
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// The basis of irreducible partial characters

const PartialBasis& ipi_basis(const Group& G, const PrimeSet& pi) {
  return G.analysis<PartialBasis>("ipi_basis:" + pi.key(), [&G, &pi] {
    bool covers = true;
    for (u64 p : prime_divisors(G.order())) covers = covers && pi.contains(p);
    PICHAR_CHECK(covers || is_solvable(G), ErrorKind::InvalidInput,
                 "irreducible partial characters require a solvable group when the prime set "
                 "misses a divisor of the order");

    const CharTable& t = character_table(G);
    const std::vector<std::uint32_t>& pcls = pi_classes(G, pi);
    PartialBasis basis;
    basis.group_digest = G.digest();
    basis.pi = pi.primes();
    basis.classes = pcls;

    if (covers) {
      // Restriction is the identity map: the members are the rows themselves,
      // already in (degree, value) order.
      for (std::uint32_t i = 0; i < t.row_count(); ++i) {
        PartialCharacter m;
        m.group_digest = G.digest();
        m.pi = pi.primes();
        m.values = t.rows[i].values;
        basis.members.push_back(std::move(m));
        basis.lifts.push_back(i);
      }
    } else {
      // Distinct restrictions, ascending by (degree, values), least lift each.
      struct Candidate {
        u64 degree = 0;
        std::vector<Cyclotomic> values;
        std::uint32_t least_row = 0;
      };
      std::vector<Candidate> cands;
      cands.reserve(t.row_count());
      for (std::uint32_t i = 0; i < t.row_count(); ++i) {
        Candidate c;
        c.degree = character_degree(t.rows[i]);
        c.values.reserve(pcls.size());
        for (std::uint32_t cl : pcls) c.values.push_back(t.rows[i].values[cl]);
        c.least_row = i;
        cands.push_back(std::move(c));
      }
      std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        int c = values_compare(a.values, b.values);
        if (c != 0) return c < 0;
        return a.least_row < b.least_row;
      });
      cands.erase(std::unique(cands.begin(), cands.end(),
                              [](const Candidate& a, const Candidate& b) {
                                return a.values == b.values;
                              }),
                  cands.end());

      // Irreducibility decisions in ascending degree order. A candidate is
      // reducible exactly when it is a nonnegative-integer combination of
      // already-confirmed irreducible members of strictly smaller degree:
      // every part of a genuine decomposition has smaller degree (two or
      // more parts share the total), is itself the restriction of some row
      // (every irreducible partial character has a lift), and was therefore
      // decided in an earlier iteration. Candidate systems are solved modulo
      // a decision prime; acceptance is re-verified exactly, and rejection
      // is sound because a true solution would reduce to the unique residue
      // solution (true multiplicities stay below the modulus).
      std::vector<std::size_t> confirmed;
      std::map<u64, std::vector<std::vector<u64>>> residue_cols;
      auto residues_for = [&](u64 ell, u64 w) -> std::vector<std::vector<u64>>& {
        std::vector<std::vector<u64>>& cols = residue_cols[ell];
        while (cols.size() < confirmed.size()) {
          const std::vector<Cyclotomic>& vals = cands[confirmed[cols.size()]].values;
          std::vector<u64> r(vals.size());
          for (std::size_t c = 0; c < vals.size(); ++c) r[c] = residue_mod(vals[c], ell, w);
          cols.push_back(std::move(r));
        }
        return cols;
      };

      auto is_combination = [&](std::size_t n_unknowns, const Candidate& r) -> bool {
        if (n_unknowns == 0) return false;  // positive degree is never an empty sum
        for (unsigned retry = 0; retry < kMaxDecisionRetries; ++retry) {
          u64 ell = decision_prime(G, r.degree, retry);
          u64 w = least_primitive_root(ell);
          const std::vector<std::vector<u64>>& cols = residues_for(ell, w);
          AffineSystem sys(ell, n_unknowns);
          bool ok = true;
          std::vector<u64> eq(n_unknowns);
          for (std::size_t c = 0; c < r.values.size() && ok; ++c) {
            for (std::size_t j = 0; j < n_unknowns; ++j) eq[j] = cols[j][c];
            ok = sys.add(eq, residue_mod(r.values[c], ell, w));
          }
          if (!ok) return false;             // no integer combination exists
          if (sys.free_dim() > 0) continue;  // degenerate modulus: reroll
          std::vector<u64> x = sys.particular();
          std::vector<const std::vector<Cyclotomic>*> basis_cols(n_unknowns);
          for (std::size_t j = 0; j < n_unknowns; ++j)
            basis_cols[j] = &cands[confirmed[j]].values;
          return combination_matches(basis_cols, x, r.values);
        }
        PICHAR_INTERNAL(false, "irreducibility decision stayed ambiguous across retry moduli");
        return false;
      };

      for (std::size_t k = 0; k < cands.size(); ++k) {
        bool irreducible = true;
        if (cands[k].degree > 1) {
          std::size_t n_unknowns = 0;
          while (n_unknowns < confirmed.size() &&
                 cands[confirmed[n_unknowns]].degree < cands[k].degree)
            ++n_unknowns;
          irreducible = !is_combination(n_unknowns, cands[k]);
        }
        if (irreducible) confirmed.push_back(k);
      }

      PICHAR_CHECK(confirmed.size() == pcls.size(), ErrorKind::Certification,
                   "irreducible partial-character count (" + std::to_string(confirmed.size()) +
                       ") differs from the class count (" + std::to_string(pcls.size()) + ")");

      // Certify rational independence: full column rank modulo one decision
      // prime implies independence over the rationals (a primitive integer
      // dependency would survive reduction).
      bool independent = false;
      for (unsigned retry = 0; retry < kMaxDecisionRetries && !independent; ++retry) {
        u64 ell = decision_prime(G, 1, retry);
        u64 w = least_primitive_root(ell);
        const std::vector<std::vector<u64>>& cols = residues_for(ell, w);
        AffineSystem sys(ell, confirmed.size());
        std::vector<u64> eq(confirmed.size());
        for (std::size_t c = 0; c < pcls.size(); ++c) {
          for (std::size_t j = 0; j < confirmed.size(); ++j) eq[j] = cols[j][c];
          sys.add(eq, 0);
        }
        independent = sys.free_dim() == 0;
      }
      PICHAR_CHECK(independent, ErrorKind::Certification,
                   "the irreducible partial characters failed the independence certification");

      for (std::size_t k : confirmed) {
        PartialCharacter m;
        m.group_digest = G.digest();
        m.pi = pi.primes();
        m.values = cands[k].values;
        basis.members.push_back(std::move(m));
        basis.lifts.push_back(cands[k].least_row);
      }
    }

    PICHAR_INTERNAL(basis.members.size() == pcls.size(),
                    "basis size differs from the class count");

    // The degree-1 members must be exactly the distinct restrictions of the
    // linear characters, in the same order with the same least lifts. This
    // pins the basis prefix to the table-free list the descent engine uses
    // for its degree-1 index space.
    const LinearPartials& lp = linear_partials(G, pi);
    std::size_t n1 = 0;
    while (n1 < basis.members.size() && partial_degree(basis.members[n1]) == 1) ++n1;
    PICHAR_INTERNAL(n1 == lp.values.size(),
                    "degree-1 member count differs from the linear restrictions");
    for (std::size_t j = 0; j < n1; ++j) {
      PICHAR_INTERNAL(basis.members[j].values == lp.values[j] && basis.lifts[j] == lp.lifts[j],
                      "degree-1 basis prefix differs from the linear restrictions");
    }
    return basis;
  });
}

std::vector<u64> decompose_partial(const Group& G, const PrimeSet& pi,
                                   const PartialCharacter& alpha) {
  const PartialBasis& B = ipi_basis(G, pi);
  PICHAR_CHECK(alpha.group_digest == G.digest(), ErrorKind::InvalidInput,
               "partial character belongs to a different group");
  PICHAR_CHECK(alpha.pi == pi.primes(), ErrorKind::InvalidInput,
               "partial-character prime list is not in canonical form");
  PICHAR_CHECK(alpha.values.size() == B.classes.size(), ErrorKind::InvalidInput,
               "partial-character length differs from the class count");
  for (const Cyclotomic& v : alpha.values)
    PICHAR_CHECK(G.exponent() % v.conductor() == 0, ErrorKind::InvalidInput,
                 "partial-character value lies outside the group's character field");
  u64 bound = partial_degree(alpha);

  const std::size_t n = B.members.size();
  for (unsigned retry = 0; retry < kMaxDecisionRetries; ++retry) {
    u64 ell = decision_prime(G, bound, retry);
    u64 w = least_primitive_root(ell);
    AffineSystem sys(ell, n);
    bool ok = true;
    std::vector<u64> eq(n);
    for (std::size_t c = 0; c < B.classes.size() && ok; ++c) {
      for (std::size_t j = 0; j < n; ++j) eq[j] = residue_mod(B.members[j].values[c], ell, w);
      ok = sys.add(eq, residue_mod(alpha.values[c], ell, w));
    }
    PICHAR_CHECK(ok, ErrorKind::InvalidInput,
                 "partial character is not an integer combination of the irreducible members");
    if (sys.free_dim() > 0) continue;  // degenerate modulus: reroll
    std::vector<u64> x = sys.particular();
    std::vector<const std::vector<Cyclotomic>*> cols(n);
    for (std::size_t j = 0; j < n; ++j) cols[j] = &B.members[j].values;
    PICHAR_CHECK(combination_matches(cols, x, alpha.values), ErrorKind::InvalidInput,
                 "partial character is not a nonnegative integer combination of the "
                 "irreducible members");
    return x;
  }
  PICHAR_INTERNAL(false, "decomposition stayed ambiguous across retry moduli");
  return {};
}

bool is_pi_lift(const Group& G, const Character& chi, const PrimeSet& pi) {
  const PartialBasis& B = ipi_basis(G, pi);
  PartialCharacter r = restrict_pi(G, chi, pi);
  for (const PartialCharacter& m : B.members)
    if (m.values == r.values) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Partial induction

PartialCharacter induce_partial(const Group& G, const Group& H, const PartialCharacter& theta) {
  PICHAR_CHECK(theta.group_digest == H.digest(), ErrorKind::InvalidInput,
               "partial character belongs to a different group");
  PICHAR_CHECK(view_parent(H) == &G, ErrorKind::InvalidInput,
               "subgroup is not a view of the given group");
  PrimeSet pi(theta.pi);
  PICHAR_CHECK(theta.pi == pi.primes(), ErrorKind::InvalidInput,
               "partial-character prime list is not in canonical form");
  const std::vector<std::uint32_t>& hp = pi_classes(H, pi);
  PICHAR_CHECK(theta.values.size() == hp.size(), ErrorKind::InvalidInput,
               "partial-character length differs from the class count");
  const std::vector<std::uint32_t>& gp = pi_classes(G, pi);
  const ConjClasses& gc = conjugacy_classes(G);
  const ConjClasses& hc = conjugacy_classes(H);
  std::vector<std::uint32_t> pos(gc.count(), kNoPos);
  for (std::uint32_t i = 0; i < gp.size(); ++i) pos[gp[i]] = i;

  PartialCharacter out;
  out.group_digest = G.digest();
  out.pi = pi.primes();
  out.values.assign(gp.size(), Cyclotomic());
  for (std::size_t d = 0; d < hp.size(); ++d) {
    if (theta.values[d].is_zero()) continue;
    std::uint32_t hcls = hp[d];
    std::uint32_t c = gc.class_of[H.data(hc.reps[hcls])[0]];
    PICHAR_INTERNAL(pos[c] != kNoPos, "an element of supported order fused outside the classes");
    // |C_G(g)| / |C_H(h)| = |G| |h^H| / (|g^G| |H|), exact.
    Rat weight = Rat(static_cast<unsigned long>(G.order())) *
                 Rat(static_cast<unsigned long>(hc.sizes[hcls])) /
                 (Rat(static_cast<unsigned long>(gc.sizes[c])) *
                  Rat(static_cast<unsigned long>(H.order())));
    out.values[pos[c]] += theta.values[d].scaled(weight);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial descent: monomiality, primitivity, super-monomiality

namespace {

using PNodeKey = std::pair<Members, std::uint32_t>;      // (subgroup, member index)
using PPrimNode = std::tuple<Members, std::uint32_t, u64>;  // + degree

bool pnode_less(const PPrimNode& a, const PPrimNode& b) {
  if (std::get<0>(a).size() != std::get<0>(b).size())
    return std::get<0>(a).size() < std::get<0>(b).size();
  return a < b;
}

/// Result of the partial-inducer descent below one pair (H, phi).
struct PartialDescentInfo {
  u64 degree = 0;
  bool primitive = true;
  bool monomial = false;
  std::vector<PPrimNode> prim_nodes;  // primitive pairs reachable, canonical subgroups
};

/// All partial inductions from one maximal subgroup instance at one
/// constituent degree: (member index in the canonical child's space, induced
/// values on the parent's supported-class positions).
struct PartialEdgeData {
  Members child;
  std::vector<std::pair<std::uint32_t, std::vector<Cyclotomic>>> rows;
};

struct PartialDescentStore {
  std::mutex mu;
  std::map<PNodeKey, std::shared_ptr<const PartialDescentInfo>> memo;
  std::map<std::tuple<Members, Members, u64>, std::shared_ptr<const PartialEdgeData>> edges;
};

PartialDescentStore& partial_descent_store(const Group& G, const PrimeSet& pi) {
  const std::shared_ptr<PartialDescentStore>& p =
      G.analysis<std::shared_ptr<PartialDescentStore>>(
          "partial_descent_store:" + pi.key(),
          [] { return std::make_shared<PartialDescentStore>(); });
  return *p;
}

/// Descent engine bound to one ambient group and one prime set. Nodes are
/// indexed by the member order of the subgroup's basis; degree-1 nodes use
/// the table-free linear-restriction list, which is certified to be the
/// basis prefix in identical order.
class PartialDescent {
 public:
  PartialDescent(const Group& G, const PrimeSet& pi)
      : g_(G), pi_(pi), store_(partial_descent_store(G, pi)), vs_(detail::view_store(G)) {}

  GroupPtr view_of(const Members& m) { return detail::view_of(g_, vs_, m); }

  const std::vector<Id>& back_of(const Members& m) { return detail::back_of(g_, vs_, m); }

  Id to_ambient(const Group& view, Id local) const {
    return detail::to_ambient(g_, view, local);
  }

  const std::vector<Cyclotomic>& node_values(const Members& m, std::uint32_t idx, u64 deg) {
    GroupPtr v = view_of(m);
    if (deg == 1) {
      const LinearPartials& lp = linear_partials(*v, pi_);
      PICHAR_INTERNAL(idx < lp.values.size(), "degree-1 member index out of range");
      return lp.values[idx];
    }
    const PartialBasis& B = ipi_basis(*v, pi_);
    PICHAR_INTERNAL(idx < B.members.size(), "basis member index out of range");
    return B.members[idx].values;
  }

  std::shared_ptr<const PartialEdgeData> edge(const Members& parent, const GroupPtr& pv,
                                              const Members& m_amb, u64 dprime) {
    std::tuple<Members, Members, u64> key{parent, m_amb, dprime};
    {
      std::lock_guard<std::mutex> lk(store_.mu);
      auto it = store_.edges.find(key);
      if (it != store_.edges.end()) return it->second;
    }
    auto out = std::make_shared<PartialEdgeData>();
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
    GroupPtr vmloc = subgroup_view(pv, mloc);

    const ConjClasses& lc = conjugacy_classes(*vmloc);
    const ConjClasses& cc = conjugacy_classes(*vm);
    const ConjClasses& pc = conjugacy_classes(*pv);
    const std::vector<Id>& back_m = back_of(can.members);
    const std::vector<std::uint32_t>& lpc = pi_classes(*vmloc, pi_);
    const std::vector<std::uint32_t>& vpc = pi_classes(*vm, pi_);
    const std::vector<std::uint32_t>& ppc = pi_classes(*pv, pi_);
    std::vector<std::uint32_t> vpos(cc.count(), kNoPos);
    for (std::uint32_t i = 0; i < vpc.size(); ++i) vpos[vpc[i]] = i;
    std::vector<std::uint32_t> ppos(pc.count(), kNoPos);
    for (std::uint32_t i = 0; i < ppc.size(); ++i) ppos[ppc[i]] = i;

    // Per supported local class: value position on the canonical copy (a
    // local element a corresponds to conjugator^{-1} a conjugator), target
    // position in the parent, and the exact induction weight.
    struct Fusion {
      std::uint32_t can_pos = 0;
      std::uint32_t parent_pos = 0;
      Rat weight;
    };
    std::vector<Fusion> fus;
    fus.reserve(lpc.size());
    for (std::uint32_t d : lpc) {
      Id a_pv = vmloc->data(lc.reps[d])[0];
      std::uint32_t pcls = pc.class_of[a_pv];
      Id a_amb = to_ambient(*pv, a_pv);
      Id c_amb = g_.conj(a_amb, can.conjugator);
      PICHAR_INTERNAL(back_m[c_amb] != static_cast<Id>(g_.order()),
                      "conjugated element missing from the canonical subgroup");
      std::uint32_t ccls = cc.class_of[back_m[c_amb]];
      PICHAR_INTERNAL(vpos[ccls] != kNoPos && ppos[pcls] != kNoPos,
                      "an element of supported order fused outside the classes");
      Fusion f;
      f.can_pos = vpos[ccls];
      f.parent_pos = ppos[pcls];
      f.weight = Rat(static_cast<unsigned long>(pv->order())) *
                 Rat(static_cast<unsigned long>(lc.sizes[d])) /
                 (Rat(static_cast<unsigned long>(pc.sizes[pcls])) *
                  Rat(static_cast<unsigned long>(vmloc->order())));
      fus.push_back(std::move(f));
    }

    auto try_candidate = [&](std::uint32_t j, const std::vector<Cyclotomic>& w) {
      std::vector<Cyclotomic> ind(ppc.size());
      for (const Fusion& f : fus) {
        const Cyclotomic& val = w[f.can_pos];
        if (val.is_zero()) continue;
        ind[f.parent_pos] += val.scaled(f.weight);
      }
      out->rows.emplace_back(j, std::move(ind));
    };
    if (dprime == 1) {
      const LinearPartials& lp = linear_partials(*vm, pi_);
      for (std::uint32_t j = 0; j < lp.values.size(); ++j) try_candidate(j, lp.values[j]);
    } else {
      const PartialBasis& B = ipi_basis(*vm, pi_);
      for (std::uint32_t j = 0; j < B.members.size(); ++j)
        if (partial_degree(B.members[j]) == dprime) try_candidate(j, B.members[j].values);
    }

    std::lock_guard<std::mutex> lk(store_.mu);
    return store_.edges.emplace(std::move(key), std::move(out)).first->second;
  }

  std::shared_ptr<const PartialDescentInfo> descend(const PNodeKey& key, u64 deg) {
    {
      std::lock_guard<std::mutex> lk(store_.mu);
      auto it = store_.memo.find(key);
      if (it != store_.memo.end()) return it->second;
    }
    auto info = std::make_shared<PartialDescentInfo>();
    info->degree = deg;
    info->monomial = (deg == 1);
    if (deg > 1) {
      const std::vector<Cyclotomic>& mine = node_values(key.first, key.second, deg);
      GroupPtr vc = view_of(key.first);
      const std::vector<Members>& maxs = maximal_subgroups(*vc);
      for (const Members& mloc : maxs) {
        u64 index = vc->order() / mloc.size();
        if (deg % index != 0) continue;
        Members m_amb;
        m_amb.reserve(mloc.size());
        for (Id v : mloc) m_amb.push_back(to_ambient(*vc, v));
        std::sort(m_amb.begin(), m_amb.end());
        std::shared_ptr<const PartialEdgeData> ed = edge(key.first, vc, m_amb, deg / index);
        for (const auto& [row, ind] : ed->rows) {
          if (ind != mine) continue;
          info->primitive = false;
          std::shared_ptr<const PartialDescentInfo> child =
              descend({ed->child, row}, deg / index);
          info->monomial = info->monomial || child->monomial;
          info->prim_nodes.insert(info->prim_nodes.end(), child->prim_nodes.begin(),
                                  child->prim_nodes.end());
        }
      }
    }
    if (info->primitive) {
      info->prim_nodes = {{key.first, key.second, deg}};
    } else {
      std::sort(info->prim_nodes.begin(), info->prim_nodes.end(), pnode_less);
      info->prim_nodes.erase(
          std::unique(info->prim_nodes.begin(), info->prim_nodes.end()),
          info->prim_nodes.end());
    }
    std::lock_guard<std::mutex> lk(store_.mu);
    return store_.memo.emplace(key, std::move(info)).first->second;
  }

 private:
  const Group& g_;
  const PrimeSet& pi_;
  PartialDescentStore& store_;
  detail::ViewStore& vs_;
};

std::uint32_t basis_index_of(const Group& G, const PrimeSet& pi, const PartialCharacter& phi) {
  PICHAR_CHECK(phi.group_digest == G.digest(), ErrorKind::InvalidInput,
               "partial character belongs to a different group");
  PICHAR_CHECK(phi.pi == pi.primes(), ErrorKind::InvalidInput,
               "partial-character prime list is not in canonical form");
  const PartialBasis& B = ipi_basis(G, pi);
  for (std::uint32_t j = 0; j < B.members.size(); ++j)
    if (B.members[j].values == phi.values) return j;
  PICHAR_CHECK(false, ErrorKind::InvalidInput,
               "partial character is not an irreducible member of the basis");
  return 0;
}

std::shared_ptr<const PartialDescentInfo> partial_root_info(const Group& G,
                                                            const PartialCharacter& phi) {
  PrimeSet pi(phi.pi);
  std::uint32_t idx = basis_index_of(G, pi, phi);
  PartialDescent d(G, pi);
  return d.descend({Members{}, idx}, partial_degree(phi));
}

}  // namespace

bool is_monomial_partial(const Group& G, const PartialCharacter& phi) {
  return partial_root_info(G, phi)->monomial;
}

bool is_primitive_partial(const Group& G, const PartialCharacter& phi) {
  return partial_root_info(G, phi)->primitive;
}

bool is_super_monomial_partial(const Group& G, const PartialCharacter& phi) {
  std::shared_ptr<const PartialDescentInfo> info = partial_root_info(G, phi);
  for (const PPrimNode& n : info->prim_nodes)
    if (std::get<2>(n) != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Special characters and factorization

namespace {

/// Per-row flags, eager for the whole table: degree and determinantal order
/// must factor over the set, and the restriction to every maximal normal
/// subgroup must have all constituents flagged there (recursively; the
/// trivial group has no proper normal subgroups, closing the recursion).
const std::vector<bool>& pi_special_flags(const Group& G, const PrimeSet& pi) {
  return G.analysis<std::vector<bool>>("pi_special:" + pi.key(), [&G, &pi] {
    const CharTable& t = character_table(G);
    std::vector<bool> ok(t.row_count());
    for (std::uint32_t i = 0; i < t.row_count(); ++i) {
      ok[i] = pi.is_pi_number(character_degree(t.rows[i])) &&
              pi.is_pi_number(determinantal_order(G, det_character(G, t.rows[i])));
    }
    detail::ViewStore& vs = detail::view_store(G);
    for (const Members& nm : maximal_normal_subgroups(G)) {
      GroupPtr N = detail::view_of(G, vs, nm);
      const std::vector<bool>& sub = pi_special_flags(*N, pi);
      for (std::uint32_t i = 0; i < t.row_count(); ++i) {
        if (!ok[i]) continue;
        ClassFunction res = restrict_to(G, t.rows[i], *N);
        for (const Constituent& c : constituents(*N, res)) {
          if (!sub[c.row]) {
            ok[i] = false;
            break;
          }
        }
      }
    }
    return ok;
  });
}

}  // namespace

bool is_pi_special(const Group& G, const Character& chi, const PrimeSet& pi) {
  PICHAR_CHECK(is_solvable(G), ErrorKind::InvalidInput,
               "special-character detection requires a solvable group");
  return pi_special_flags(G, pi)[row_of(G, chi)];
}

std::optional<PiFactorization> pi_factorization(const Group& G, const Character& chi,
                                                const PrimeSet& pi) {
  PICHAR_CHECK(is_solvable(G), ErrorKind::InvalidInput,
               "special-character factorization requires a solvable group");
  std::uint32_t target = row_of(G, chi);
  const CharTable& t = character_table(G);
  PrimeSet pi2 = pi_complement(G, pi);
  const std::vector<bool>& fa = pi_special_flags(G, pi);
  const std::vector<bool>& fb = pi_special_flags(G, pi2);
  u64 d = character_degree(t.rows[target]);
  std::optional<PiFactorization> found;
  for (std::uint32_t i = 0; i < t.row_count(); ++i) {
    if (!fa[i]) continue;
    u64 di = character_degree(t.rows[i]);
    if (d % di != 0) continue;
    for (std::uint32_t j = 0; j < t.row_count(); ++j) {
      if (!fb[j] || character_degree(t.rows[j]) * di != d) continue;
      if (cf_product(G, t.rows[i], t.rows[j]).values == t.rows[target].values) {
        PICHAR_INTERNAL(!found.has_value(), "special-character factorization is not unique");
        found = PiFactorization{i, j};
      }
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Value-field filter and reality

std::vector<std::uint32_t> bpi_value_filter(const Group& G, const PartialCharacter& phi) {
  PrimeSet pi(phi.pi);
  basis_index_of(G, pi, phi);  // membership required
  const CharTable& t = character_table(G);
  const std::vector<std::uint32_t>& pcls = pi_classes(G, pi);
  u64 m = pi.part(G.order());
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < t.row_count(); ++i) {
    bool lifts = true;
    for (std::size_t c = 0; c < pcls.size() && lifts; ++c)
      lifts = t.rows[i].values[pcls[c]] == phi.values[c];
    if (lifts && values_in_subcyclotomic(t.rows[i].values, m)) out.push_back(i);
  }
  return out;
}

bool is_real_char(const ClassFunction& f) {
  for (const Cyclotomic& v : f.values)
    if (!v.is_real()) return false;
  return true;
}

}  // namespace pichar
