#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pichar/numth.hpp"
#include "pichar/rat.hpp"

namespace pichar {

/// An element of the union of all cyclotomic fields Q(zeta_n), represented
/// canonically so that equality of field elements is syntactic equality of
/// records:
///
///   * conductor n is minimal (the element lies in no smaller Q(zeta_m)),
///     and n is never ≡ 2 (mod 4) (Q(zeta_2m) = Q(zeta_m) for odd m);
///   * coordinates are over the integral power basis {zeta_n^j : j < phi(n)}
///     reduced mod the n-th cyclotomic polynomial;
///   * coordinates are stored sparsely as (basis_index, coefficient) pairs,
///     sorted by index, with no zero coefficients, coefficients in lowest
///     terms (mpq_class canonical form).
///
/// Rationals are the n = 1 case; zero is the empty term list at n = 1.
/// All arithmetic is exact. The decimal printer is for debugging only and
/// never feeds logic.
class Cyclotomic {
 public:
  using Term = std::pair<std::uint32_t, Rat>;

  /// Zero.
  Cyclotomic() : n_(1) {}

  static Cyclotomic from_rational(const Rat& q);
  static Cyclotomic from_int(long v) { return from_rational(Rat(v)); }
  /// zeta_n^k (k may be any integer, reduced mod n).
  static Cyclotomic root_of_unity(u64 n, i64 k);
  /// sum of coeff * zeta_n^exponent terms (exponents arbitrary integers).
  static Cyclotomic from_root_sum(u64 n, const std::vector<std::pair<i64, Rat>>& terms);
  /// Rebuild from serialized form [n, [[basis_index, num, den], ...]]; the
  /// input is re-canonicalized and verified (readers never trust records).
  static Cyclotomic from_serialized(u64 n, const std::vector<std::tuple<u64, std::string, std::string>>& terms);

  u64 conductor() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }

  bool is_zero() const { return t_.empty(); }
  bool is_rational() const { return n_ == 1; }
  bool is_one() const;
  bool is_integer() const;
  /// Requires is_rational().
  Rat rational_value() const;

  Cyclotomic operator-() const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  /// Exact field division; o must be nonzero.
  Cyclotomic operator/(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  /// Galois action zeta_n -> zeta_n^k; requires gcd(k, conductor) = 1.
  Cyclotomic galois(u64 k) const;
  /// Complex conjugation (the Galois action k = -1).
  Cyclotomic conj() const;
  bool is_real() const { return *this == conj(); }

  /// Total order for deterministic sorting: by conductor, then by the sparse
  /// term sequence ((index, coefficient) lexicographically, coefficients by
  /// numeric value). Returns <0, 0, >0.
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

  std::uint64_t hash() const;

  /// Exact printer, e.g. "1/2*z8 - z8^3" or "-2/3".
  std::string to_string() const;
  /// Debug-only numeric approximation; never used by any library logic.
  std::complex<double> approx() const;

  /// Scale by a rational (cheap path, no conductor change possible... except
  /// scaling by zero).
  Cyclotomic scaled(const Rat& c) const;

 private:
  Cyclotomic(u64 n, std::vector<Term> t) : n_(n), t_(std::move(t)) {}
  void canonicalize();  // terms must already have index < phi(n_), be sorted, nonzero

  u64 n_;
  std::vector<Term> t_;

  friend class CycAccumulator;
};

inline bool cyc_less(const Cyclotomic& a, const Cyclotomic& b) { return Cyclotomic::compare(a, b) < 0; }

/// True iff every value lies in Q(zeta_m) (after canonicalizing m, this is a
/// conductor-divisibility test; equivalent to fixedness under every Galois
/// automorphism k ≡ 1 mod m of the ambient field).
bool values_in_subcyclotomic(const std::vector<Cyclotomic>& values, u64 m);

/// Canonical conductor of Q(zeta_m): m, or m/2 when m ≡ 2 (mod 4).
inline u64 canonical_conductor(u64 m) {
  PICHAR_CHECK(m >= 1, ErrorKind::InvalidInput, "conductor must be positive");
  return (m % 4 == 2) ? m / 2 : m;
}

/// Image of v (an algebraic integer) in F_ell under zeta_n -> w^((ell-1)/n),
/// where ell is prime, w is a primitive root mod ell, and the conductor of v
/// divides ell - 1. Errors (InvalidInput) when v has a denominator.
u64 residue_mod(const Cyclotomic& v, u64 ell, u64 w);

/// Exact accumulator for sums of products of cyclotomic values that are
/// algebraic integers with small coordinates (character-table verification
/// hot path). Terms are accumulated as int64 exponent histograms over a fixed
/// common conductor and reduced once at the end.
class CycAccumulator {
 public:
  explicit CycAccumulator(u64 common_conductor);
  /// Add weight * a * conj(b); a and b must have integer coordinates and
  /// conductors dividing the common conductor.
  void add_product_conj(const Cyclotomic& a, const Cyclotomic& b, i64 weight);
  /// Add weight * a.
  void add(const Cyclotomic& a, i64 weight);
  /// Reduce and return the exact value.
  Cyclotomic value() const;

 private:
  u64 n_;
  std::vector<i64> hist_;  // exponent histogram over [0, n_)
};

}  // namespace pichar
