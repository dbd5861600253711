#include "pichar/chartable.hpp"

#include <algorithm>
#include <utility>

#include "pichar/modlinalg.hpp"
#include "pichar/subgroup.hpp"

namespace pichar {
namespace {

/// Least primitive root modulo the prime ell.
int compare_rows(const Character& a, const Character& b) {
  u64 da = character_degree(a), db = character_degree(b);
  if (da != db) return da < db ? -1 : 1;
  PICHAR_INTERNAL(a.values.size() == b.values.size(), "row length mismatch");
  for (std::size_t c = 0; c < a.values.size(); ++c) {
    int cmp = table_value_compare(a.values[c], b.values[c]);
    if (cmp != 0) return cmp;
  }
  return 0;
}

bool row_less(const Character& a, const Character& b) { return compare_rows(a, b) < 0; }

/// Modular character-table solver: splits the joint eigenspaces of the
/// class-sum matrices over F_ell, reads degrees off the orthogonality
/// residues, and lifts values through the root-of-unity correspondence
/// zeta_e <-> w^((ell-1)/e).
class TableSolver {
 public:
  explicit TableSolver(const Group& G) : g_(G), cc_(conjugacy_classes(G)), r_(cc_.count()) {
    u64 n = g_.order();
    u64 exp = g_.exponent();
    // Least prime ell ≡ 1 (mod exponent) with ell^2 > 4|G|, so that degrees
    // are uniquely recoverable in (0, ell/2).
    u64 bound = 1;
    while (bound * bound <= 4 * n) ++bound;  // least bound with bound^2 > 4|G|
    ell_ = least_prime_in_progression(exp, bound > 1 ? bound - 1 : 1);
    PICHAR_CHECK(ell_ < (1u << 20), ErrorKind::CapExceeded,
                 "character-table modulus exceeds the supported modular-arithmetic bound");
    w_ = least_primitive_root(ell_);
    dlog_.assign(ell_, 0);
    u64 x = 1;
    for (u64 i = 0; i + 1 < ell_; ++i) {
      dlog_[x] = i;
      x = (x * w_) % ell_;
    }
    csize_inv_.resize(r_);
    for (std::uint32_t k = 0; k < r_; ++k) csize_inv_[k] = mod_inv(cc_.sizes[k] % ell_, ell_);
    power_classes_.resize(r_);
  }

  CharTable solve() {
    split_eigenspaces();
    std::vector<u64> degrees = extract_degrees();
    CharTable t;
    t.group_digest = g_.digest();
    t.rows.reserve(r_);
    for (std::uint32_t s = 0; s < r_; ++s) {
      std::vector<u64> chibar(r_);
      for (std::uint32_t k = 0; k < r_; ++k)
        chibar[k] = degrees[s] % ell_ * eigen_[s][k] % ell_ * csize_inv_[k] % ell_;
      Character row;
      row.group_digest = t.group_digest;
      row.values.reserve(r_);
      for (std::uint32_t k = 0; k < r_; ++k) row.values.push_back(lift_value(degrees[s], chibar, k));
      t.rows.push_back(std::move(row));
    }
    std::sort(t.rows.begin(), t.rows.end(), row_less);
    return t;
  }

 private:
  /// One pass over the class-sum matrices in class order; since they commute,
  /// sequential eigenspace refinement ends at the joint eigenspaces, which
  /// are one-dimensional exactly when the split is complete.
  void split_eigenspaces() {
    using Basis = std::vector<std::vector<u64>>;  // columns, reduced echelon
    std::vector<Basis> spaces;
    {
      Basis full(r_, std::vector<u64>(r_, 0));
      for (std::uint32_t a = 0; a < r_; ++a) full[a][a] = 1;
      spaces.push_back(std::move(full));
    }
    for (std::uint32_t i = 1; i < r_; ++i) {
      bool done = true;
      for (const Basis& s : spaces)
        if (s.size() > 1) done = false;
      if (done) break;
      ModMatrix M(ell_, r_, r_);
      {
        std::vector<std::vector<u64>> raw = class_matrix(g_, i);
        for (std::uint32_t j = 0; j < r_; ++j)
          for (std::uint32_t k = 0; k < r_; ++k) M.at(j, k) = raw[j][k] % ell_;
      }
      std::vector<Basis> next;
      for (Basis& s : spaces) {
        std::size_t d = s.size();
        if (d == 1) {
          next.push_back(std::move(s));
          continue;
        }
        // W = M * basis columns; R = coordinates of W in the basis, read off
        // at the pivot rows (valid iff the space is M-invariant, certified by
        // re-expanding basis * R).
        std::vector<std::vector<u64>> w(d);
        for (std::size_t b = 0; b < d; ++b) w[b] = mat_vec(M, s[b]);
        std::vector<std::size_t> pivots(d);
        for (std::size_t b = 0; b < d; ++b) {
          std::size_t p = 0;
          while (p < r_ && s[b][p] == 0) ++p;
          PICHAR_CHECK(p < r_, ErrorKind::Certification, "zero column in eigenspace basis");
          pivots[b] = p;
        }
        ModMatrix R(ell_, d, d);
        for (std::size_t aa = 0; aa < d; ++aa)
          for (std::size_t bb = 0; bb < d; ++bb) R.at(aa, bb) = w[bb][pivots[aa]];
        for (std::size_t bb = 0; bb < d; ++bb)
          for (std::uint32_t row = 0; row < r_; ++row) {
            u64 acc = 0;
            for (std::size_t aa = 0; aa < d; ++aa) acc = (acc + s[aa][row] * R.at(aa, bb)) % ell_;
            PICHAR_CHECK(acc == w[bb][row], ErrorKind::Certification,
                         "class-sum matrix does not preserve a refinement subspace");
          }
        std::vector<u64> cp = charpoly(R);
        std::vector<u64> roots = poly_roots(cp, ell_);
        std::size_t total = 0;
        for (u64 lam : roots) {
          ModMatrix shifted = R;
          for (std::size_t aa = 0; aa < d; ++aa)
            shifted.at(aa, aa) = (shifted.at(aa, aa) + ell_ - lam) % ell_;
          std::vector<std::vector<u64>> ker = kernel(shifted);
          std::vector<std::vector<u64>> lifted;
          lifted.reserve(ker.size());
          for (const auto& kv : ker) {
            std::vector<u64> v(r_, 0);
            for (std::uint32_t row = 0; row < r_; ++row) {
              u64 acc = 0;
              for (std::size_t aa = 0; aa < d; ++aa) acc = (acc + s[aa][row] * kv[aa]) % ell_;
              v[row] = acc;
            }
            lifted.push_back(std::move(v));
          }
          Basis nb = column_echelon(lifted, ell_);
          total += nb.size();
          next.push_back(std::move(nb));
        }
        PICHAR_CHECK(total == d, ErrorKind::Certification,
                     "class-sum matrix failed to split a refinement subspace");
      }
      spaces = std::move(next);
    }
    PICHAR_CHECK(spaces.size() == r_, ErrorKind::Certification,
                 "joint eigenspaces of the class algebra are not one-dimensional");
    eigen_.clear();
    eigen_.reserve(r_);
    for (const auto& s : spaces) {
      PICHAR_INTERNAL(s.size() == 1, "unsplit subspace survived");
      std::vector<u64> u = s[0];
      PICHAR_CHECK(u[0] != 0, ErrorKind::Certification,
                   "class-algebra eigenvector vanishes at the identity class");
      u64 inv0 = mod_inv(u[0], ell_);
      for (auto& x : u) x = x * inv0 % ell_;
      eigen_.push_back(std::move(u));
    }
  }

  std::vector<u64> extract_degrees() {
    std::vector<u64> degrees(r_);
    u64 nmod = g_.order() % ell_;
    u64 sum_sq = 0;
    for (std::uint32_t s = 0; s < r_; ++s) {
      u64 acc = 0;
      for (std::uint32_t k = 0; k < r_; ++k)
        acc = (acc + eigen_[s][k] * eigen_[s][cc_.inverse_class[k]] % ell_ * csize_inv_[k]) % ell_;
      PICHAR_CHECK(acc != 0, ErrorKind::Certification, "degree residue sum vanished");
      u64 d2 = nmod * mod_inv(acc, ell_) % ell_;
      u64 found = 0, count = 0;
      for (u64 cand = 1; 2 * cand < ell_; ++cand)
        if (cand * cand % ell_ == d2) {
          found = cand;
          ++count;
        }
      PICHAR_CHECK(count == 1, ErrorKind::Certification,
                   "orthogonality residue does not determine a unique degree");
      degrees[s] = found;
      sum_sq += found * found;
    }
    PICHAR_CHECK(sum_sq == g_.order(), ErrorKind::Certification,
                 "squared character degrees do not sum to the group order");
    return degrees;
  }

  const std::vector<std::uint32_t>& power_classes(std::uint32_t k) {
    std::vector<std::uint32_t>& pc = power_classes_[k];
    if (pc.empty()) {
      u64 e = cc_.rep_orders[k];
      pc.reserve(e);
      Id rep = cc_.reps[k];
      Id cur = g_.identity();
      for (u64 t = 0; t < e; ++t) {
        pc.push_back(cc_.class_of[cur]);
        cur = g_.mul(cur, rep);
      }
    }
    return pc;
  }

  /// Lift the mod-ell value at class k of a degree-d row to an exact sum of
  /// e-th roots of unity: the d eigenvalue residues are recovered from the
  /// power sums chibar(rep^t) by Newton's identities, located among the
  /// powers of w^((ell-1)/e), and mapped back through zeta_e^j <-> w^j(ell-1)/e.
  Cyclotomic lift_value(u64 d, const std::vector<u64>& chibar, std::uint32_t k) {
    u64 e = cc_.rep_orders[k];
    if (e == 1) return Cyclotomic::from_rational(Rat(static_cast<long>(d)));
    const std::vector<std::uint32_t>& pc = power_classes(k);
    u64 step = (ell_ - 1) / e;
    if (d == 1) {
      PICHAR_CHECK(chibar[k] != 0, ErrorKind::Certification,
                   "linear character value vanishes modulo the table prime");
      u64 t = dlog_[chibar[k]];
      PICHAR_CHECK(t % step == 0, ErrorKind::Certification,
                   "linear character value is not a root of unity of the element order");
      return Cyclotomic::root_of_unity(e, static_cast<i64>(t / step));
    }
    std::vector<u64> p(d + 1, 0);  // power sums p[t] = chibar(rep^t)
    for (u64 t = 1; t <= d; ++t) p[t] = chibar[pc[t % e]];
    u64 we = mod_pow(w_, step, ell_);
    std::vector<u64> mult = unity_root_multiplicities(p, e, we, ell_);
    PICHAR_CHECK(!mult.empty(), ErrorKind::Certification,
                 "character value did not resolve into roots of unity of the element order");
    std::vector<std::pair<i64, Rat>> terms;
    for (u64 j = 0; j < e; ++j)
      if (mult[j] > 0) terms.emplace_back(static_cast<i64>(j), Rat(static_cast<long>(mult[j])));
    return Cyclotomic::from_root_sum(e, terms);
  }

  const Group& g_;
  const ConjClasses& cc_;
  std::uint32_t r_;
  u64 ell_ = 0;
  u64 w_ = 0;
  std::vector<std::uint32_t> dlog_;
  std::vector<u64> csize_inv_;
  std::vector<std::vector<u64>> eigen_;                    // per space: normalized omega-vector
  std::vector<std::vector<std::uint32_t>> power_classes_;  // class of rep^t, lazily per class
};

}  // namespace

ClassFunction make_class_function(const Group& G, std::vector<Cyclotomic> values) {
  const ConjClasses& cc = conjugacy_classes(G);
  PICHAR_CHECK(values.size() == cc.count(), ErrorKind::InvalidInput,
               "class-function value count differs from the class count");
  ClassFunction f;
  f.group_digest = G.digest();
  f.values = std::move(values);
  return f;
}

const Cyclotomic& value_at_element(const Group& G, const ClassFunction& f, Id g) {
  PICHAR_CHECK(f.group_digest == G.digest(), ErrorKind::InvalidInput,
               "class function belongs to a different group");
  const ConjClasses& cc = conjugacy_classes(G);
  PICHAR_INTERNAL(f.values.size() == cc.count(), "class-function length mismatch");
  PICHAR_INTERNAL(g < G.order(), "element id out of range");
  return f.values[cc.class_of[g]];
}

u64 character_degree(const ClassFunction& f) {
  PICHAR_CHECK(!f.values.empty(), ErrorKind::InvalidInput, "empty class function");
  const Cyclotomic& v = f.values[0];
  PICHAR_CHECK(v.is_rational(), ErrorKind::InvalidInput, "degree is not rational");
  Rat q = v.rational_value();
  PICHAR_CHECK(rat_is_integer(q) && q > 0, ErrorKind::InvalidInput,
               "degree is not a positive integer");
  return static_cast<u64>(rat_to_i64(q));
}

int table_value_compare(const Cyclotomic& a, const Cyclotomic& b) {
  bool a1 = a.is_one(), b1 = b.is_one();
  if (a1 || b1) return a1 == b1 ? 0 : (a1 ? -1 : 1);
  return Cyclotomic::compare(a, b);
}

std::vector<std::vector<u64>> class_matrix(const Group& G, std::uint32_t i) {
  const ConjClasses& cc = conjugacy_classes(G);
  std::uint32_t r = cc.count();
  PICHAR_CHECK(i < r, ErrorKind::InvalidInput, "class index out of range");
  std::vector<std::vector<u64>> m(r, std::vector<u64>(r, 0));
  for (Id x : cc.members[i]) {
    Id xinv = G.inv(x);
    for (std::uint32_t k = 0; k < r; ++k) {
      Id y = G.mul(xinv, cc.reps[k]);
      m[cc.class_of[y]][k] += 1;
    }
  }
  return m;
}

std::vector<std::vector<std::vector<u64>>> class_mult_coefficients(const Group& G) {
  const ConjClasses& cc = conjugacy_classes(G);
  std::vector<std::vector<std::vector<u64>>> a;
  a.reserve(cc.count());
  for (std::uint32_t i = 0; i < cc.count(); ++i) a.push_back(class_matrix(G, i));
  return a;
}

const CharTable& character_table(const Group& G) {
  return G.analysis<CharTable>("character_table", [&]() -> CharTable {
    CharTable t = TableSolver(G).solve();
    TableVerification v = verify_table(G, t);
    PICHAR_CHECK(v.ok, ErrorKind::Certification,
                 "character table failed exact certification: " + v.violation);
    return t;
  });
}

TableVerification verify_table(const Group& G, const CharTable& t) {
  auto fail = [](std::string msg) { return TableVerification{false, std::move(msg)}; };
  const ConjClasses& cc = conjugacy_classes(G);
  std::uint32_t r = cc.count();
  if (t.group_digest != G.digest()) return fail("table belongs to a different group");
  if (t.rows.size() != r) return fail("row count differs from the class count");
  for (std::uint32_t i = 0; i < r; ++i) {
    if (t.rows[i].values.size() != r)
      return fail("row " + std::to_string(i) + " length differs from the class count");
    if (t.rows[i].group_digest != G.digest())
      return fail("row " + std::to_string(i) + " belongs to a different group");
  }
  u64 exp = canonical_conductor(G.exponent());
  for (std::uint32_t i = 0; i < r; ++i) {
    if (!values_in_subcyclotomic(t.rows[i].values, exp))
      return fail("row " + std::to_string(i) +
                  " has a value outside the exponent cyclotomic field");
    for (const Cyclotomic& v : t.rows[i].values)
      for (const auto& term : v.terms())
        if (term.second.get_den() != 1)
          return fail("row " + std::to_string(i) + " has a non-integral value coordinate");
  }
  for (const Cyclotomic& v : t.rows[0].values)
    if (!v.is_one()) return fail("first row is not the principal character");
  u64 sum_sq = 0;
  for (std::uint32_t i = 0; i < r; ++i) {
    const Cyclotomic& v = t.rows[i].values[0];
    if (!v.is_rational()) return fail("row " + std::to_string(i) + " degree is not rational");
    Rat q = v.rational_value();
    if (!rat_is_integer(q) || q <= 0)
      return fail("row " + std::to_string(i) + " degree is not a positive integer");
    u64 d = static_cast<u64>(rat_to_i64(q));
    sum_sq += d * d;
  }
  if (sum_sq != G.order()) return fail("squared degrees do not sum to the group order");
  // First orthogonality: sum_c |C_c| chi_i(c) conj(chi_j(c)) = [i==j] |G|.
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = i; j < r; ++j) {
      CycAccumulator acc(exp);
      for (std::uint32_t c = 0; c < r; ++c)
        acc.add_product_conj(t.rows[i].values[c], t.rows[j].values[c],
                             static_cast<i64>(cc.sizes[c]));
      Cyclotomic v = acc.value();
      Cyclotomic want =
          (i == j) ? Cyclotomic::from_rational(Rat(static_cast<long>(G.order()))) : Cyclotomic();
      if (v != want)
        return fail("row orthogonality fails for rows " + std::to_string(i) + " and " +
                    std::to_string(j));
    }
  // Second orthogonality: sum_rho chi(c) conj(chi(c')) = [c==c'] |centralizer|.
  for (std::uint32_t c = 0; c < r; ++c)
    for (std::uint32_t c2 = c; c2 < r; ++c2) {
      CycAccumulator acc(exp);
      for (std::uint32_t i = 0; i < r; ++i)
        acc.add_product_conj(t.rows[i].values[c], t.rows[i].values[c2], 1);
      Cyclotomic v = acc.value();
      Cyclotomic want = (c == c2) ? Cyclotomic::from_rational(
                                        Rat(static_cast<long>(G.order() / cc.sizes[c])))
                                  : Cyclotomic();
      if (v != want)
        return fail("column orthogonality fails for classes " + std::to_string(c) + " and " +
                    std::to_string(c2));
    }
  for (std::uint32_t i = 0; i + 1 < r; ++i)
    if (compare_rows(t.rows[i], t.rows[i + 1]) >= 0) return fail("rows are not in canonical order");
  return TableVerification{};
}

const std::vector<Character>& linear_characters(const Group& G) {
  return G.analysis<std::vector<Character>>("linear_characters", [&]() -> std::vector<Character> {
    GroupPtr self = G.shared_from_this();
    Members der = derived_subgroup(G);
    QuotientResult qr = quotient_group(self, der);
    const CharTable& qt = character_table(*qr.group);
    const ConjClasses& cc = conjugacy_classes(G);
    const ConjClasses& qcc = conjugacy_classes(*qr.group);
    std::vector<Character> lin;
    lin.reserve(qt.rows.size());
    for (const Character& row : qt.rows) {
      PICHAR_INTERNAL(character_degree(row) == 1, "abelianization row of degree > 1");
      Character c;
      c.group_digest = G.digest();
      c.values.reserve(cc.count());
      for (std::uint32_t cls = 0; cls < cc.count(); ++cls)
        c.values.push_back(row.values[qcc.class_of[qr.projection[cc.reps[cls]]]]);
      lin.push_back(std::move(c));
    }
    std::sort(lin.begin(), lin.end(), row_less);
    return lin;
  });
}

}  // namespace pichar
