#include "pichar/modlinalg.hpp"

#include <algorithm>

#include "pichar/errors.hpp"

namespace pichar {

ModMatrix ModMatrix::identity(u64 p, std::size_t n) {
  ModMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

u64 mod_inv(u64 x, u64 p) {
  x %= p;
  PICHAR_CHECK(x != 0, ErrorKind::InvalidInput, "inverse of zero mod p");
  return mod_pow(x, p - 2, p);
}

ModMatrix mat_mul(const ModMatrix& A, const ModMatrix& B) {
  PICHAR_INTERNAL(A.p == B.p && A.cols == B.rows, "matrix shape mismatch");
  ModMatrix C(A.p, A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t k = 0; k < A.cols; ++k) {
      const u64 aik = A.at(i, k);
      if (aik == 0) continue;
      const u64* brow = &B.a[k * B.cols];
      u64* crow = &C.a[i * C.cols];
      for (std::size_t j = 0; j < B.cols; ++j) {
        crow[j] = (crow[j] + aik * brow[j]) % A.p;
      }
    }
  }
  return C;
}

std::vector<u64> mat_vec(const ModMatrix& A, const std::vector<u64>& v) {
  PICHAR_INTERNAL(A.cols == v.size(), "matrix/vector shape mismatch");
  std::vector<u64> out(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    u64 acc = 0;
    const u64* row = &A.a[i * A.cols];
    for (std::size_t j = 0; j < A.cols; ++j) acc = (acc + row[j] * v[j]) % A.p;
    out[i] = acc;
  }
  return out;
}

std::vector<u64> charpoly(ModMatrix A) {
  PICHAR_INTERNAL(A.rows == A.cols, "charpoly requires a square matrix");
  const std::size_t n = A.rows;
  const u64 p = A.p;
  if (n == 0) return {1};

  // Reduce to upper Hessenberg form by similarity transformations with
  // deterministic pivoting (least nonzero row).
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = 0;
    bool found = false;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (A.at(i, j) != 0) {
        piv = i;
        found = true;
        break;
      }
    }
    if (!found) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(A.at(piv, c), A.at(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(A.at(r, piv), A.at(r, j + 1));
    }
    const u64 inv = mod_inv(A.at(j + 1, j), p);
    for (std::size_t i = j + 2; i < n; ++i) {
      const u64 f = (A.at(i, j) * inv) % p;
      if (f == 0) continue;
      const u64 nf = p - f;
      // row_i -= f * row_{j+1};  col_{j+1} += f * col_i  (similarity pair)
      for (std::size_t c = 0; c < n; ++c) {
        A.at(i, c) = (A.at(i, c) + nf * A.at(j + 1, c)) % p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        A.at(r, j + 1) = (A.at(r, j + 1) + f * A.at(r, i)) % p;
      }
    }
  }

  // Leading-principal-minor recurrence for Hessenberg matrices:
  // p_k = (x - H[k-1][k-1]) p_{k-1}
  //       - sum_m H[k-1-m][k-1] * (prod of subdiagonals) * p_{k-1-m}.
  std::vector<std::vector<u64>> pk(n + 1);
  pk[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<u64>& cur = pk[k];
    cur.assign(k + 1, 0);
    const std::vector<u64>& prev = pk[k - 1];
    const u64 d = A.at(k - 1, k - 1);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = (cur[i + 1] + prev[i]) % p;
      if (d) cur[i] = (cur[i] + (p - d) * prev[i]) % p;
    }
    u64 prod = 1;
    for (std::size_t m = 1; m < k; ++m) {
      prod = (prod * A.at(k - m, k - m - 1)) % p;
      if (prod == 0) break;
      const u64 coef = (A.at(k - 1 - m, k - 1) * prod) % p;
      if (coef == 0) continue;
      const u64 nc = p - coef;
      const std::vector<u64>& older = pk[k - 1 - m];
      for (std::size_t i = 0; i < older.size(); ++i) {
        cur[i] = (cur[i] + nc * older[i]) % p;
      }
    }
  }
  return pk[n];
}

u64 poly_eval(const std::vector<u64>& c, u64 x, u64 p) {
  u64 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = (acc * x + c[i]) % p;
  return acc;
}

std::vector<u64> poly_roots(const std::vector<u64>& c, u64 p) {
  std::vector<u64> roots;
  for (u64 x = 0; x < p; ++x) {
    if (poly_eval(c, x, p) == 0) roots.push_back(x);
  }
  return roots;
}

std::vector<std::vector<u64>> kernel(ModMatrix A) {
  const u64 p = A.p;
  const std::size_t m = A.rows, n = A.cols;
  // Reduced row echelon form with deterministic pivoting.
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = m;
    for (std::size_t i = r; i < m; ++i) {
      if (A.at(i, c) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == m) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(r, j));
    }
    const u64 inv = mod_inv(A.at(r, c), p);
    for (std::size_t j = 0; j < n; ++j) A.at(r, j) = (A.at(r, j) * inv) % p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const u64 f = A.at(i, c);
      if (f == 0) continue;
      const u64 nf = p - f;
      for (std::size_t j = 0; j < n; ++j) {
        A.at(i, j) = (A.at(i, j) + nf * A.at(r, j)) % p;
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(n, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
      const u64 coef = A.at(k, f);
      if (coef) v[pivot_col[k]] = p - coef;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<u64>> column_echelon(const std::vector<std::vector<u64>>& cols, u64 p) {
  std::vector<std::vector<u64>> basis;   // pivot rows strictly ascending
  std::vector<std::size_t> pivots;
  for (const auto& c0 : cols) {
    std::vector<u64> v = c0;
    for (auto& e : v) e %= p;
    // Reduce against existing pivots.
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const u64 f = v[pivots[k]];
      if (f == 0) continue;
      const u64 nf = p - f;
      const std::vector<u64>& b = basis[k];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = (v[i] + nf * b[i]) % p;
    }
    std::size_t lead = v.size();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) {
        lead = i;
        break;
      }
    }
    if (lead == v.size()) continue;  // dependent
    const u64 inv = mod_inv(v[lead], p);
    for (auto& e : v) e = (e * inv) % p;
    // Back-reduce established columns against the new pivot.
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const u64 f = basis[k][lead];
      if (f == 0) continue;
      const u64 nf = p - f;
      for (std::size_t i = 0; i < v.size(); ++i) {
        basis[k][i] = (basis[k][i] + nf * v[i]) % p;
      }
    }
    std::size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < lead) ++pos;
    basis.insert(basis.begin() + pos, std::move(v));
    pivots.insert(pivots.begin() + pos, lead);
  }
  return basis;
}

bool AffineSystem::add(const std::vector<u64>& coeffs, u64 rhs) {
  PICHAR_INTERNAL(coeffs.size() == n_, "equation width mismatch");
  if (!consistent_) return false;
  std::vector<u64> row(n_ + 1);
  for (std::size_t i = 0; i < n_; ++i) row[i] = coeffs[i] % p_;
  row[n_] = rhs % p_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const u64 f = row[pivot_[k]];
    if (f == 0) continue;
    const u64 nf = p_ - f;
    const std::vector<u64>& b = rows_[k];
    for (std::size_t i = 0; i <= n_; ++i) row[i] = (row[i] + nf * b[i]) % p_;
  }
  std::size_t lead = n_ + 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (row[i] != 0) {
      lead = i;
      break;
    }
  }
  if (lead == n_ + 1) {
    if (row[n_] != 0) consistent_ = false;
    return consistent_;
  }
  const u64 inv = mod_inv(row[lead], p_);
  for (auto& e : row) e = (e * inv) % p_;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const u64 f = rows_[k][lead];
    if (f == 0) continue;
    const u64 nf = p_ - f;
    for (std::size_t i = 0; i <= n_; ++i) {
      rows_[k][i] = (rows_[k][i] + nf * row[i]) % p_;
    }
  }
  std::size_t pos = 0;
  while (pos < pivot_.size() && pivot_[pos] < lead) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(row));
  pivot_.insert(pivot_.begin() + pos, lead);
  return true;
}

std::vector<u64> AffineSystem::particular() const {
  PICHAR_CHECK(consistent_, ErrorKind::InvalidInput, "inconsistent system has no solution");
  std::vector<u64> x(n_, 0);
  for (std::size_t k = 0; k < rows_.size(); ++k) x[pivot_[k]] = rows_[k][n_];
  return x;
}

std::vector<std::vector<u64>> AffineSystem::nullspace() const {
  std::vector<bool> is_pivot(n_, false);
  for (std::size_t c : pivot_) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t f = 0; f < n_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(n_, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const u64 coef = rows_[k][f];
      if (coef) v[pivot_[k]] = p_ - coef;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t AffineSystem::free_dim() const { return n_ - rows_.size(); }

std::vector<u64> unity_root_multiplicities(const std::vector<u64>& power_sums, u64 e,
                                           u64 omega_e, u64 p) {
  PICHAR_INTERNAL(!power_sums.empty(), "power-sum vector must include index 0");
  u64 d = power_sums.size() - 1;
  PICHAR_INTERNAL(d >= 1 && d < p, "root count must be positive and below the modulus");
  // Newton's identities: e_m = (1/m) sum_{i=1..m} (-1)^(i-1) e_{m-i} p_i.
  std::vector<u64> esym(d + 1, 0);
  esym[0] = 1;
  for (u64 m = 1; m <= d; ++m) {
    u64 acc = 0;
    for (u64 i = 1; i <= m; ++i) {
      u64 term = esym[m - i] * (power_sums[i] % p) % p;
      acc = (i % 2 == 1) ? (acc + term) % p : (acc + p - term) % p;
    }
    esym[m] = acc * mod_inv(m % p, p) % p;
  }
  // f(x) = prod (x - root): coefficient of x^(d-i) is (-1)^i esym[i].
  std::vector<u64> f(d + 1);
  for (u64 i = 0; i <= d; ++i) f[d - i] = (i % 2 == 0) ? esym[i] : (p - esym[i]) % p;
  std::vector<u64> mult(e, 0);
  u64 deg = d;
  u64 x = 1;
  auto eval_prefix = [&](u64 dd, u64 at) {
    u64 acc = f[dd];
    for (u64 t = dd; t-- > 0;) acc = (acc * at + f[t]) % p;
    return acc;
  };
  for (u64 j = 0; j < e && deg > 0; ++j) {
    while (deg > 0 && eval_prefix(deg, x) == 0) {
      // Synthetic division of the degree-deg prefix of f by (X - x).
      u64 carry = f[deg];
      for (u64 t = deg; t-- > 0;) {
        u64 next = (f[t] + carry * x) % p;
        f[t] = carry;
        carry = next;
      }
      PICHAR_INTERNAL(carry == 0, "deflation remainder must vanish at a root");
      --deg;
      ++mult[j];
    }
    x = x * omega_e % p;
  }
  if (deg != 0) return {};
  return mult;
}

}  // namespace pichar
