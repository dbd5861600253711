#pragma once

#include <cstddef>
#include <vector>

#include "pichar/numth.hpp"

namespace pichar {

/// Dense row-major matrix over F_p (p prime, p < 2^20 so products of entries
/// accumulate safely in u64 across any dimension used here).
struct ModMatrix {
  u64 p = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<u64> a;  // rows*cols entries in [0, p)

  ModMatrix() = default;
  ModMatrix(u64 p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}

  u64& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  u64 at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static ModMatrix identity(u64 p, std::size_t n);
};

u64 mod_inv(u64 x, u64 p);

ModMatrix mat_mul(const ModMatrix& A, const ModMatrix& B);
std::vector<u64> mat_vec(const ModMatrix& A, const std::vector<u64>& v);

/// Monic characteristic polynomial of a square matrix, lowest degree first
/// (c[0] + c[1] x + ... + x^n), computed via Hessenberg reduction.
/// Deterministic.
std::vector<u64> charpoly(ModMatrix A);

u64 poly_eval(const std::vector<u64>& c, u64 x, u64 p);

/// Distinct roots in [0, p), ascending, found by full scan.
std::vector<u64> poly_roots(const std::vector<u64>& c, u64 p);

/// Basis of the right kernel of A, as columns in reduced echelon form with
/// free coordinates taken in ascending column order. Deterministic.
std::vector<std::vector<u64>> kernel(ModMatrix A);

/// Reduced column-echelon basis of the span of the given columns: pivot rows
/// strictly ascending, pivots 1, pivot rows zero in every other column.
/// Canonical for the span (independent of input order). Zero columns are
/// dropped.
std::vector<std::vector<u64>> column_echelon(const std::vector<std::vector<u64>>& cols, u64 p);

/// Recovers the multiset of e-th roots of unity mod p (given as powers of
/// omega_e, an element of order e) whose power sums are prescribed:
/// power_sums[t] = sum of the d roots raised to t, for t = 1..d, with
/// power_sums.size() == d + 1 (index 0 ignored). Newton's identities build
/// the monic degree-d polynomial with those roots; it is deflated across the
/// powers of omega_e. Returns mult[j] (j < e) summing to d, or an empty
/// vector if the polynomial does not split over those roots. Requires d < p.
std::vector<u64> unity_root_multiplicities(const std::vector<u64>& power_sums, u64 e,
                                           u64 omega_e, u64 p);

/// Incremental solver for affine systems over F_p: rows are appended one at a
/// time; the reduced system is maintained so consistency is known throughout.
class AffineSystem {
 public:
  AffineSystem(u64 p, std::size_t unknowns) : p_(p), n_(unknowns) {}

  /// Add the equation coeffs . x = rhs. Returns false if the system became
  /// inconsistent.
  bool add(const std::vector<u64>& coeffs, u64 rhs);

  bool consistent() const { return consistent_; }
  std::size_t unknowns() const { return n_; }

  /// Particular solution with all free variables zero. Requires consistency.
  std::vector<u64> particular() const;

  /// Nullspace basis vectors (one per free variable, ascending).
  std::vector<std::vector<u64>> nullspace() const;

  /// Number of solutions as p^free_dim, or 0 if inconsistent; capped values
  /// use free_dim() directly.
  std::size_t free_dim() const;

 private:
  u64 p_;
  std::size_t n_;
  bool consistent_ = true;
  // Reduced rows: rows_[k] has length n_+1 (coeffs | rhs), pivot at pivot_[k];
  // kept fully reduced against each other, pivots ascending.
  std::vector<std::vector<u64>> rows_;
  std::vector<std::size_t> pivot_;
};

}  // namespace pichar
