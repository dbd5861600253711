#include "pichar/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "pichar/numth.hpp"

namespace pichar {

namespace {

using Row = std::vector<i64>;

i64 checked_i64(__int128 v, const char* what) {
  PICHAR_CHECK(v <= INT64_MAX && v >= INT64_MIN, ErrorKind::Certification,
               std::string("64-bit overflow in ") + what);
  return static_cast<i64>(v);
}

/// Exact division of integer polynomials (num / den, den monic up to sign not
/// required; division must be exact).
std::vector<i64> poly_div_exact(const std::vector<i64>& num, const std::vector<i64>& den) {
  PICHAR_INTERNAL(!den.empty() && den.back() != 0, "poly_div_exact: bad divisor");
  std::vector<i64> rem(num);
  int dn = (int)num.size() - 1, dd = (int)den.size() - 1;
  PICHAR_INTERNAL(dn >= dd, "poly_div_exact: degree underflow");
  std::vector<i64> quo(dn - dd + 1, 0);
  i64 lead = den.back();
  for (int i = dn; i >= dd; --i) {
    PICHAR_INTERNAL(rem[i] % lead == 0, "poly_div_exact: inexact");
    i64 q = rem[i] / lead;
    quo[i - dd] = q;
    if (q != 0) {
      for (int j = 0; j <= dd; ++j) {
        rem[i - dd + j] = checked_i64((__int128)rem[i - dd + j] - (__int128)q * den[j], "poly division");
      }
    }
  }
  for (int i = 0; i < dd; ++i) PICHAR_INTERNAL(rem[i] == 0, "poly_div_exact: nonzero remainder");
  return quo;
}

std::map<u64, std::vector<i64>>& phipoly_cache() {
  static std::map<u64, std::vector<i64>> cache;
  return cache;
}

/// Coefficients of the n-th cyclotomic polynomial (ascending powers, monic).
/// Caller must hold the registry mutex.
const std::vector<i64>& phipoly(u64 n) {
  auto& cache = phipoly_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<i64> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;  // x^n - 1
  for (u64 d : divisors(n)) {
    if (d == n) continue;
    p = poly_div_exact(p, phipoly(d));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

struct SubField {
  std::vector<u64> gal_gens;  // generators of {k mod n : k ≡ 1 (mod m), gcd(k, n) = 1}
  bool rewrite_built = false;
  std::vector<std::vector<Rat>> to_sub;  // phi(m) x phi(n): coordinates in Q(zeta_m)
};

struct ConductorData {
  u64 n = 1, phi = 1;
  std::vector<i64> poly;          // Phi_n
  std::vector<Row> row;           // row[e] = x^e mod Phi_n, e in [0, L)
  std::vector<u64> proper_divs;   // canonical proper divisors, ascending
  std::map<u64, SubField> subs;   // one per proper divisor
  std::mutex sub_mutex;           // guards lazy rewrite-matrix builds

  const Row& power(u64 e) const {
    PICHAR_INTERNAL(e < row.size(), "power row out of range");
    return row[e];
  }
};

ConductorData& conductor_data(u64 n) {
  static std::mutex mu;
  static std::map<u64, std::unique_ptr<ConductorData>> reg;
  std::lock_guard<std::mutex> lock(mu);
  auto it = reg.find(n);
  if (it != reg.end()) return *it->second;

  PICHAR_CHECK(n >= 1 && n % 4 != 2, ErrorKind::InvalidInput, "non-canonical conductor");
  auto cd = std::make_unique<ConductorData>();
  cd->n = n;
  cd->phi = euler_phi(n);
  cd->poly = phipoly(n);
  u64 L = std::max<u64>(n, 2 * cd->phi - 1);
  cd->row.resize(L);
  for (u64 e = 0; e < std::min<u64>(cd->phi, L); ++e) {
    cd->row[e].assign(cd->phi, 0);
    cd->row[e][e] = 1;
  }
  for (u64 e = cd->phi; e < L; ++e) {
    // x^e = x * x^(e-1) mod Phi_n
    const Row& prev = cd->row[e - 1];
    Row cur(cd->phi, 0);
    i64 lead = prev[cd->phi - 1];
    for (u64 i = 0; i + 1 < cd->phi; ++i) cur[i + 1] = prev[i];
    if (lead != 0) {
      for (u64 i = 0; i < cd->phi; ++i) {
        cur[i] = checked_i64((__int128)cur[i] - (__int128)lead * cd->poly[i], "power-row reduction");
      }
    }
    cd->row[e] = std::move(cur);
  }
  for (u64 m : divisors(n)) {
    if (m == n || m % 4 == 2) continue;
    cd->proper_divs.push_back(m);
    SubField sf;
    // generators of the fixing subgroup H_m = Gal(Q(zeta_n)/Q(zeta_m))
    u64 target = cd->phi / euler_phi(m);
    std::vector<char> gen_set(n, 0);
    gen_set[1 % n] = 1;
    u64 count = 1;
    for (u64 k = 2; k < n && count < target; ++k) {
      if (gcd_u64(k, n) != 1 || k % m != 1 % m) continue;
      if (gen_set[k]) continue;
      sf.gal_gens.push_back(k);
      // close under multiplication by k
      std::vector<u64> members;
      for (u64 x = 0; x < n; ++x)
        if (gen_set[x]) members.push_back(x);
      for (u64 x : members) {
        u64 y = x;
        while (true) {
          y = (unsigned __int128)y * k % n;
          if (gen_set[y]) break;
          gen_set[y] = 1;
          ++count;
        }
      }
    }
    PICHAR_INTERNAL(count == target, "Galois fixing-subgroup size mismatch");
    cd->subs.emplace(m, std::move(sf));
  }
  auto& ref = *cd;
  reg.emplace(n, std::move(cd));
  return ref;
}

/// mpq_class(num, den) does not normalize on its own; every rational entering
/// through a public boundary goes through here so that syntactic equality of
/// records equals field equality.
Rat canon_rat(Rat q) {
  q.canonicalize();
  return q;
}

/// Dense -> sparse, dropping zeros.
std::vector<Cyclotomic::Term> sparsify(const std::vector<Rat>& dense) {
  std::vector<Cyclotomic::Term> t;
  for (std::uint32_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) t.push_back({i, dense[i]});
  }
  return t;
}

/// Galois image of sparse terms at fixed conductor n (no canonicalization).
std::vector<Cyclotomic::Term> galois_raw(const ConductorData& cd, const std::vector<Cyclotomic::Term>& t, u64 k) {
  std::vector<Rat> dense(cd.phi, Rat(0));
  for (auto& [j, c] : t) {
    const Row& r = cd.power((u64)j * k % cd.n);
    for (u64 i = 0; i < cd.phi; ++i) {
      if (r[i] != 0) dense[i] += c * Rat((long)r[i]);
    }
  }
  return sparsify(dense);
}

/// Rewrite matrix Q(zeta_n) -> Q(zeta_m) coordinates (built on demand).
const std::vector<std::vector<Rat>>& rewrite_matrix(ConductorData& cd, u64 m) {
  std::lock_guard<std::mutex> lock(cd.sub_mutex);
  SubField& sf = cd.subs.at(m);
  if (sf.rewrite_built) return sf.to_sub;
  u64 pn = cd.phi, pm = euler_phi(m);
  // A: pn x pm, column i = coordinates of zeta_m^i in Q(zeta_n)
  std::vector<std::vector<Rat>> aug(pn, std::vector<Rat>(pm + pn, Rat(0)));
  u64 scale = cd.n / m;
  for (u64 i = 0; i < pm; ++i) {
    const Row& r = cd.power(i * scale);
    for (u64 j = 0; j < pn; ++j) aug[j][i] = Rat((long)r[j]);
  }
  for (u64 j = 0; j < pn; ++j) aug[j][pm + j] = 1;
  // Gauss-Jordan on the first pm columns
  std::vector<u64> pivot_row(pm);
  u64 rank = 0;
  for (u64 col = 0; col < pm; ++col) {
    u64 pr = rank;
    while (pr < pn && aug[pr][col] == 0) ++pr;
    PICHAR_INTERNAL(pr < pn, "subfield basis not independent");
    std::swap(aug[rank], aug[pr]);
    Rat inv = 1 / aug[rank][col];
    for (auto& v : aug[rank]) v *= inv;
    for (u64 r2 = 0; r2 < pn; ++r2) {
      if (r2 == rank || aug[r2][col] == 0) continue;
      Rat f = aug[r2][col];
      for (u64 c2 = col; c2 < pm + pn; ++c2) aug[r2][c2] -= f * aug[rank][c2];
    }
    pivot_row[col] = rank;
    ++rank;
  }
  sf.to_sub.assign(pm, std::vector<Rat>(pn, Rat(0)));
  for (u64 i = 0; i < pm; ++i) {
    for (u64 j = 0; j < pn; ++j) sf.to_sub[i][j] = aug[pivot_row[i]][pm + j];
  }
  sf.rewrite_built = true;
  return sf.to_sub;
}

}  // namespace

Cyclotomic Cyclotomic::from_rational(const Rat& q) {
  Cyclotomic c;
  if (q != 0) c.t_.push_back({0, canon_rat(q)});
  return c;
}

bool Cyclotomic::is_one() const { return n_ == 1 && t_.size() == 1 && t_[0].second == 1; }

bool Cyclotomic::is_integer() const {
  for (auto& [i, c] : t_)
    if (!rat_is_integer(c)) return false;
  return true;
}

Rat Cyclotomic::rational_value() const {
  PICHAR_CHECK(n_ == 1, ErrorKind::InvalidInput, "rational_value on irrational element");
  return t_.empty() ? Rat(0) : t_[0].second;
}

void Cyclotomic::canonicalize() {
  // strip zeros (callers usually already did)
  t_.erase(std::remove_if(t_.begin(), t_.end(), [](const Term& t) { return t.second == 0; }), t_.end());
  if (t_.empty()) {
    n_ = 1;
    return;
  }
  if (n_ == 1) return;
  if (t_.size() == 1 && t_[0].first == 0) {
    n_ = 1;
    return;
  }
  ConductorData& cd = conductor_data(n_);
  for (u64 m : cd.proper_divs) {
    const SubField& sf = cd.subs.at(m);
    bool fixed = true;
    for (u64 g : sf.gal_gens) {
      if (galois_raw(cd, t_, g) != t_) {
        fixed = false;
        break;
      }
    }
    if (!fixed) continue;
    const auto& T = rewrite_matrix(cd, m);
    u64 pm = T.size();
    std::vector<Rat> sub(pm, Rat(0));
    for (auto& [j, c] : t_) {
      for (u64 i = 0; i < pm; ++i) {
        if (T[i][j] != 0) sub[i] += c * T[i][j];
      }
    }
    n_ = m;
    t_ = sparsify(sub);
    PICHAR_INTERNAL(!t_.empty(), "canonicalize lost a nonzero element");
    return;  // first (smallest) fixing divisor is the minimal conductor
  }
}

Cyclotomic Cyclotomic::root_of_unity(u64 n, i64 k) {
  PICHAR_CHECK(n >= 1, ErrorKind::InvalidInput, "root_of_unity: order must be positive");
  u64 kk = ((k % (i64)n) + (i64)n) % (i64)n;
  u64 g = gcd_u64(kk == 0 ? n : kk, n);
  n /= g;
  kk /= g;
  bool neg = false;
  while (n % 4 == 2) {
    // zeta_{2m}^k = (-1)^k * zeta_m^{k (m+1)/2} for odd m
    u64 m = n / 2;
    if (kk % 2 == 1) neg = !neg;
    kk = (unsigned __int128)kk * ((m + 1) / 2) % std::max<u64>(m, 1);
    n = m;
  }
  if (n == 1) return from_rational(Rat(neg ? -1 : 1));
  ConductorData& cd = conductor_data(n);
  const Row& r = cd.power(kk);
  std::vector<Rat> dense(cd.phi, Rat(0));
  for (u64 i = 0; i < cd.phi; ++i) {
    if (r[i] != 0) dense[i] = Rat((long)(neg ? -r[i] : r[i]));
  }
  Cyclotomic c(n, sparsify(dense));
  c.canonicalize();
  return c;
}

Cyclotomic Cyclotomic::from_root_sum(u64 n, const std::vector<std::pair<i64, Rat>>& terms) {
  PICHAR_CHECK(n >= 1, ErrorKind::InvalidInput, "from_root_sum: order must be positive");
  u64 nc = canonical_conductor(n);
  ConductorData& cd = conductor_data(nc);
  std::vector<Rat> dense(cd.phi, Rat(0));
  for (auto& [e, c0] : terms) {
    if (c0 == 0) continue;
    Rat c = canon_rat(c0);
    u64 ee = ((e % (i64)n) + (i64)n) % (i64)n;
    bool neg = false;
    if (nc != n) {
      // n = 2m with m odd: zeta_n^e = (-1)^e zeta_m^{e (m+1)/2}
      if (ee % 2 == 1) neg = true;
      ee = (unsigned __int128)ee * ((nc + 1) / 2) % nc;
    }
    const Row& r = cd.power(ee);
    for (u64 i = 0; i < cd.phi; ++i) {
      if (r[i] != 0) dense[i] += (neg ? -c : c) * Rat((long)r[i]);
    }
  }
  Cyclotomic out(nc, sparsify(dense));
  out.canonicalize();
  return out;
}

Cyclotomic Cyclotomic::from_serialized(u64 n, const std::vector<std::tuple<u64, std::string, std::string>>& terms) {
  PICHAR_CHECK(n >= 1 && n % 4 != 2, ErrorKind::InvalidInput, "serialized conductor not canonical");
  u64 phi = euler_phi(n);
  std::vector<std::pair<i64, Rat>> ts;
  for (auto& [idx, num, den] : terms) {
    PICHAR_CHECK(idx < phi, ErrorKind::InvalidInput, "serialized basis index out of range");
    Int nz, dz;
    PICHAR_CHECK(nz.set_str(num, 10) == 0 && dz.set_str(den, 10) == 0, ErrorKind::InvalidInput,
                 "serialized coefficient not an integer string");
    PICHAR_CHECK(dz != 0, ErrorKind::InvalidInput, "serialized coefficient with zero denominator");
    Rat q(nz, dz);
    q.canonicalize();
    ts.push_back({(i64)idx, q});
  }
  return from_root_sum(n, ts);
}

Cyclotomic Cyclotomic::scaled(const Rat& c) const {
  if (c == 0 || is_zero()) return Cyclotomic();
  Rat cc = canon_rat(c);
  Cyclotomic out(n_, t_);
  for (auto& [i, v] : out.t_) v *= cc;
  return out;
}

Cyclotomic Cyclotomic::operator-() const { return scaled(Rat(-1)); }

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  u64 N = lcm_u64(n_, o.n_);
  ConductorData& cd = conductor_data(N);
  std::vector<Rat> dense(cd.phi, Rat(0));
  auto accumulate = [&](const Cyclotomic& x) {
    u64 s = N / x.n_;
    for (auto& [j, c] : x.t_) {
      const Row& r = cd.power((u64)j * s);
      for (u64 i = 0; i < cd.phi; ++i) {
        if (r[i] != 0) dense[i] += c * Rat((long)r[i]);
      }
    }
  };
  accumulate(*this);
  accumulate(o);
  Cyclotomic out(N, sparsify(dense));
  out.canonicalize();
  return out;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (is_zero() || o.is_zero()) return Cyclotomic();
  if (n_ == 1) return o.scaled(t_[0].second);
  if (o.n_ == 1) return scaled(o.t_[0].second);
  u64 N = lcm_u64(n_, o.n_);
  ConductorData& cd = conductor_data(N);
  u64 sa = N / n_, sb = N / o.n_;
  std::vector<Rat> wide(2 * cd.phi - 1, Rat(0));
  // embedded exponents are < phi(N) after row reduction; accumulate in two
  // stages to keep the convolution over canonical indices
  std::vector<Rat> ea(cd.phi, Rat(0)), eb(cd.phi, Rat(0));
  for (auto& [j, c] : t_) {
    const Row& r = cd.power((u64)j * sa);
    for (u64 i = 0; i < cd.phi; ++i)
      if (r[i] != 0) ea[i] += c * Rat((long)r[i]);
  }
  for (auto& [j, c] : o.t_) {
    const Row& r = cd.power((u64)j * sb);
    for (u64 i = 0; i < cd.phi; ++i)
      if (r[i] != 0) eb[i] += c * Rat((long)r[i]);
  }
  for (u64 i = 0; i < cd.phi; ++i) {
    if (ea[i] == 0) continue;
    for (u64 j = 0; j < cd.phi; ++j) {
      if (eb[j] == 0) continue;
      wide[i + j] += ea[i] * eb[j];
    }
  }
  std::vector<Rat> dense(cd.phi, Rat(0));
  for (u64 e = 0; e < wide.size(); ++e) {
    if (wide[e] == 0) continue;
    if (e < cd.phi) {
      dense[e] += wide[e];
    } else {
      const Row& r = cd.power(e);
      for (u64 i = 0; i < cd.phi; ++i)
        if (r[i] != 0) dense[i] += wide[e] * Rat((long)r[i]);
    }
  }
  Cyclotomic out(N, sparsify(dense));
  out.canonicalize();
  return out;
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const {
  PICHAR_CHECK(!o.is_zero(), ErrorKind::InvalidInput, "division by zero");
  if (o.n_ == 1) return scaled(1 / o.t_[0].second);
  // invert o by solving (mult-by-o) v = 1 over the power basis of Q(zeta_m)
  u64 m = o.n_;
  ConductorData& cd = conductor_data(m);
  u64 phi = cd.phi;
  std::vector<std::vector<Rat>> aug(phi, std::vector<Rat>(phi + 1, Rat(0)));
  for (u64 j = 0; j < phi; ++j) {
    for (auto& [i, c] : o.t_) {
      const Row& r = cd.power((u64)i + j);
      for (u64 b = 0; b < phi; ++b)
        if (r[b] != 0) aug[b][j] += c * Rat((long)r[b]);
    }
  }
  aug[0][phi] = 1;  // rhs = 1
  u64 rank = 0;
  std::vector<i64> pivot_col(phi, -1);
  for (u64 col = 0; col < phi && rank < phi; ++col) {
    u64 pr = rank;
    while (pr < phi && aug[pr][col] == 0) ++pr;
    if (pr == phi) continue;
    std::swap(aug[rank], aug[pr]);
    Rat inv = 1 / aug[rank][col];
    for (auto& v : aug[rank]) v *= inv;
    for (u64 r2 = 0; r2 < phi; ++r2) {
      if (r2 == rank || aug[r2][col] == 0) continue;
      Rat f = aug[r2][col];
      for (u64 c2 = col; c2 <= phi; ++c2) aug[r2][c2] -= f * aug[rank][c2];
    }
    pivot_col[rank] = (i64)col;
    ++rank;
  }
  PICHAR_INTERNAL(rank == phi, "multiplication-by-unit matrix singular");
  std::vector<Rat> invv(phi, Rat(0));
  for (u64 r2 = 0; r2 < phi; ++r2) invv[(u64)pivot_col[r2]] = aug[r2][phi];
  Cyclotomic oinv(m, sparsify(invv));
  oinv.canonicalize();
  return *this * oinv;
}

Cyclotomic Cyclotomic::galois(u64 k) const {
  if (n_ == 1) return *this;
  u64 kk = k % n_;
  PICHAR_CHECK(gcd_u64(kk, n_) == 1, ErrorKind::InvalidInput, "galois exponent not a unit mod conductor");
  ConductorData& cd = conductor_data(n_);
  Cyclotomic out(n_, galois_raw(cd, t_, kk));
  out.canonicalize();
  return out;
}

Cyclotomic Cyclotomic::conj() const {
  if (n_ == 1) return *this;
  return galois(n_ - 1);
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  size_t k = std::min(a.t_.size(), b.t_.size());
  for (size_t i = 0; i < k; ++i) {
    if (a.t_[i].first != b.t_[i].first) return a.t_[i].first < b.t_[i].first ? -1 : 1;
    int c = cmp(a.t_[i].second, b.t_[i].second);
    if (c != 0) return c;
  }
  if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size() ? -1 : 1;
  return 0;
}

std::uint64_t Cyclotomic::hash() const {
  std::uint64_t h = fnv1a_u64(n_);
  for (auto& [i, c] : t_) {
    h = fnv1a_u64(i, h);
    h = fnv1a(c.get_str(), h);
  }
  return h;
}

std::string Cyclotomic::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, c] : t_) {
    Rat a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    bool unit = (a == 1) && i != 0;
    if (!unit) os << a.get_str();
    if (i != 0) {
      if (!unit) os << "*";
      os << "z" << n_;
      if (i != 1) os << "^" << i;
    }
  }
  return os.str();
}

std::complex<double> Cyclotomic::approx() const {
  std::complex<double> z = 0;
  for (auto& [i, c] : t_) {
    double arg = 2.0 * M_PI * (double)i / (double)n_;
    z += c.get_d() * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  return z;
}

bool values_in_subcyclotomic(const std::vector<Cyclotomic>& values, u64 m) {
  u64 mc = canonical_conductor(m);
  for (auto& v : values) {
    if (mc % v.conductor() != 0) return false;
  }
  return true;
}

CycAccumulator::CycAccumulator(u64 common_conductor)
    : n_(canonical_conductor(common_conductor)), hist_(n_, 0) {
  conductor_data(n_);  // force table build up front
}

void CycAccumulator::add(const Cyclotomic& a, i64 weight) {
  if (weight == 0 || a.is_zero()) return;
  PICHAR_INTERNAL(n_ % a.conductor() == 0, "accumulator conductor mismatch");
  u64 s = n_ / a.conductor();
  for (auto& [j, c] : a.terms()) {
    i64 ci = rat_to_i64(c);
    u64 e = (u64)j * s % n_;
    hist_[e] = checked_i64((__int128)hist_[e] + (__int128)ci * weight, "accumulator add");
  }
}

void CycAccumulator::add_product_conj(const Cyclotomic& a, const Cyclotomic& b, i64 weight) {
  if (weight == 0 || a.is_zero() || b.is_zero()) return;
  PICHAR_INTERNAL(n_ % a.conductor() == 0 && n_ % b.conductor() == 0, "accumulator conductor mismatch");
  u64 sa = n_ / a.conductor(), sb = n_ / b.conductor();
  for (auto& [i, ca] : a.terms()) {
    i64 cai = rat_to_i64(ca);
    u64 ea = (u64)i * sa % n_;
    for (auto& [j, cb] : b.terms()) {
      i64 cbi = rat_to_i64(cb);
      u64 eb = (n_ - (u64)j * sb % n_) % n_;
      u64 e = (ea + eb) % n_;
      hist_[e] = checked_i64((__int128)hist_[e] + (__int128)cai * cbi * weight, "accumulator product");
    }
  }
}

Cyclotomic CycAccumulator::value() const {
  ConductorData& cd = conductor_data(n_);
  std::vector<__int128> dense(cd.phi, 0);
  for (u64 e = 0; e < n_; ++e) {
    if (hist_[e] == 0) continue;
    const Row& r = cd.power(e);
    for (u64 i = 0; i < cd.phi; ++i) {
      if (r[i] != 0) dense[i] += (__int128)hist_[e] * r[i];
    }
  }
  std::vector<Rat> rd(cd.phi, Rat(0));
  for (u64 i = 0; i < cd.phi; ++i) rd[i] = Rat((long)checked_i64(dense[i], "accumulator reduce"));
  std::vector<std::pair<i64, Rat>> terms;
  for (u64 i = 0; i < cd.phi; ++i) {
    if (rd[i] != 0) terms.push_back({(i64)i, rd[i]});
  }
  return Cyclotomic::from_root_sum(n_, terms);
}

u64 residue_mod(const Cyclotomic& v, u64 ell, u64 w) {
  u64 n = v.conductor();
  PICHAR_INTERNAL((ell - 1) % n == 0, "conductor does not divide ell - 1");
  u64 wn = mod_pow(w, (ell - 1) / n, ell);
  u64 acc = 0;
  for (const auto& term : v.terms()) {
    PICHAR_CHECK(term.second.get_den() == 1, ErrorKind::InvalidInput,
                 "value is not an algebraic integer");
    mpz_class num = term.second.get_num();
    u64 c = mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(ell));
    acc = (acc + c * mod_pow(wn, term.first, ell)) % ell;
  }
  return acc;
}

}  // namespace pichar
