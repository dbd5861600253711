#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pichar/charops.hpp"
#include "pichar/chartable.hpp"
#include "pichar/cyclotomic.hpp"
#include "pichar/group.hpp"

namespace pichar {

/// A finite set of primes, with the induced split of any positive integer n
/// into the part supported on the set and the coprime remainder (their
/// product is n).
class PrimeSet {
 public:
  PrimeSet() = default;
  /// Sorts, deduplicates, and validates that every entry is prime.
  explicit PrimeSet(std::vector<u64> primes);

  const std::vector<u64>& primes() const { return primes_; }
  bool contains(u64 p) const;
  bool empty() const { return primes_.empty(); }

  /// True when every prime divisor of n lies in the set (n >= 1; 1 always
  /// qualifies).
  bool is_pi_number(u64 n) const;
  /// Largest divisor of n supported on the set.
  u64 part(u64 n) const;
  /// n / part(n), the complementary factor.
  u64 coprime_part(u64 n) const;

  /// Canonical text form ("3,5"; empty set gives ""), used for cache keys
  /// and reports.
  std::string key() const;

  bool operator==(const PrimeSet& o) const { return primes_ == o.primes_; }
  bool operator!=(const PrimeSet& o) const { return !(*this == o); }

 private:
  std::vector<u64> primes_;
};

/// The primes dividing |G| that are missing from the given set.
PrimeSet pi_complement(const Group& G, const PrimeSet& pi);

/// A class function restricted to the classes whose representative order is
/// supported on a prime set: one value per such class, in the order of
/// pi_classes(G, ...). The prime list is stored sorted and deduplicated.
struct PartialCharacter {
  u64 group_digest = 0;
  std::vector<u64> pi;
  std::vector<Cyclotomic> values;

  bool operator==(const PartialCharacter& o) const {
    return group_digest == o.group_digest && pi == o.pi && values == o.values;
  }
  bool operator!=(const PartialCharacter& o) const { return !(*this == o); }
};

/// Degree of a partial character: its value on the identity class, which
/// must be a positive rational integer.
u64 partial_degree(const PartialCharacter& phi);

/// Class indices of G whose representative order factors over the prime set,
/// ascending; the identity class is always entry 0. Cached on the group.
const std::vector<std::uint32_t>& pi_classes(const Group& G, const PrimeSet& pi);

/// Restriction of a class function to the pi-classes.
PartialCharacter restrict_pi(const Group& G, const ClassFunction& f, const PrimeSet& pi);

/// The irreducible partial characters of G for one prime set: the unique
/// collection through which every restriction of an irreducible character
/// decomposes with nonnegative integer multiplicities, and which is linearly
/// independent (hence a basis of the space of functions on pi-classes).
struct PartialBasis {
  u64 group_digest = 0;
  std::vector<u64> pi;
  std::vector<std::uint32_t> classes;      // = pi_classes(G, pi)
  std::vector<PartialCharacter> members;   // ascending (degree, value order)
  std::vector<std::uint32_t> lifts;        // least table row restricting to members[i]
};

/// The basis of irreducible partial characters with one recorded lift per
/// member. Requires a solvable group unless the prime set covers every prime
/// divisor of |G| (in which case restriction is the identity and the members
/// are exactly the table rows). The construction is certified: member count
/// equals the pi-class count, the members are rationally independent, every
/// row restriction decomposes with nonnegative integer multiplicities, and
/// the degree-1 members are exactly the distinct restrictions of the linear
/// characters. Cached on the group per prime set.
const PartialBasis& ipi_basis(const Group& G, const PrimeSet& pi);

/// Multiplicities of alpha over the basis members (dense, aligned with
/// members). Errors when alpha is not a nonnegative integer combination of
/// the members.
std::vector<u64> decompose_partial(const Group& G, const PrimeSet& pi,
                                   const PartialCharacter& alpha);

/// True when the restriction of chi to the pi-classes is itself a basis
/// member (chi "lifts" that member).
bool is_pi_lift(const Group& G, const Character& chi, const PrimeSet& pi);

/// Induction of a partial character from a subgroup view H up to G: the
/// Frobenius averaging formula evaluated on pi-classes, with zero extension
/// outside H. Only pi-classes of H meet pi-classes of G, so the full formula
/// specializes exactly.
PartialCharacter induce_partial(const Group& G, const Group& H, const PartialCharacter& theta);

/// Monomiality of a basis member phi: phi is induced, by partial induction,
/// from a degree-1 irreducible partial character of some subgroup.
/// Primitivity: phi is not induced from any proper subgroup. The
/// super-monomial form asks that every irreducible partial character of
/// every subgroup inducing phi is itself monomial. All three are decided by
/// descent through maximal subgroups, which is exhaustive because an
/// irreducible induction factors through every intermediate subgroup with
/// irreducible intermediates (multiplicities in a decomposition are unique,
/// so a composite induction with a reducible middle stage cannot be
/// irreducible). phi must be a member of ipi_basis(G, phi.pi); errors
/// otherwise.
bool is_monomial_partial(const Group& G, const PartialCharacter& phi);
bool is_primitive_partial(const Group& G, const PartialCharacter& phi);
bool is_super_monomial_partial(const Group& G, const PartialCharacter& phi);

/// Special characters for a prime set: chi is pi-special when its degree and
/// its determinantal order are pi-numbers and, recursively, every
/// irreducible constituent of its restriction to every maximal normal
/// subgroup is pi-special (trivial group: true). Requires a solvable group.
/// chi must be an irreducible row of the table.
bool is_pi_special(const Group& G, const Character& chi, const PrimeSet& pi);

/// Factorization chi = alpha * beta with alpha pi-special and beta
/// pi'-special, where pi' is the complement of pi in the primes of |G|,
/// reported as table row indices. At most one such factorization exists;
/// absence is a normal answer.
struct PiFactorization {
  std::uint32_t pi_special_row = 0;
  std::uint32_t pi_prime_special_row = 0;

  bool operator==(const PiFactorization& o) const {
    return pi_special_row == o.pi_special_row && pi_prime_special_row == o.pi_prime_special_row;
  }
};
std::optional<PiFactorization> pi_factorization(const Group& G, const Character& chi,
                                                const PrimeSet& pi);

/// Lifts of the basis member phi whose values lie in the cyclotomic field
/// whose order is the pi-part of |G| — a necessary condition for the
/// distinguished-lift property, deliberately not a membership decision.
/// Table row indices, ascending. phi must be a basis member.
std::vector<std::uint32_t> bpi_value_filter(const Group& G, const PartialCharacter& phi);

/// True when every value of f is real, i.e. f equals its complex-conjugate
/// function.
bool is_real_char(const ClassFunction& f);

}  // namespace pichar
