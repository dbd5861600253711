#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "pichar/errors.hpp"

namespace pichar {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// FNV-1a over a byte string; used for stable (run-independent) digests.
inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a_u64(std::uint64_t v, std::uint64_t h = 1469598103934665603ull) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

inline u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }
inline u64 lcm_u64(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

inline u64 mod_pow(u64 base, u64 exp, u64 mod) {
  u64 r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = (unsigned __int128)r * base % mod;
    base = (unsigned __int128)base * base % mod;
    exp >>= 1;
  }
  return r;
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin for 64-bit
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = mod_pow(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = (unsigned __int128)x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Prime factorization by trial division, (prime, multiplicity) pairs, ascending.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) n /= p, ++e;
      f.push_back({p, e});
    }
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

inline std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> ps;
  for (auto& [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

/// All divisors of n, ascending.
inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> d{1};
  for (auto& [p, e] : factorize(n)) {
    size_t k = d.size();
    u64 pe = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < k; ++j) d.push_back(d[j] * pe);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Multiplicative order of a modulo n (gcd(a,n)=1 required).
inline u64 mult_order(u64 a, u64 n) {
  PICHAR_CHECK(n > 0 && gcd_u64(a % n, n) == 1, ErrorKind::InvalidInput, "mult_order: not a unit");
  if (n == 1) return 1;
  u64 x = a % n, ord = 1;
  while (x != 1) {
    x = (unsigned __int128)x * (a % n) % n;
    ++ord;
    PICHAR_INTERNAL(ord <= n, "mult_order runaway");
  }
  return ord;
}

/// Smallest prime l with l ≡ 1 (mod m) and l > bound.
inline u64 least_prime_in_progression(u64 m, u64 bound) {
  u64 l = m + 1;
  while (l <= bound) l += m;
  while (!is_prime_u64(l)) l += m;
  return l;
}

/// Least primitive root modulo the prime ell.
inline u64 least_primitive_root(u64 ell) {
  std::vector<u64> qs = prime_divisors(ell - 1);
  for (u64 w = 2; w < ell; ++w) {
    bool ok = true;
    for (u64 q : qs) {
      if (mod_pow(w, (ell - 1) / q, ell) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return w;
  }
  PICHAR_INTERNAL(false, "no primitive root found");
  return 0;
}

}  // namespace pichar
