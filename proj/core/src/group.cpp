#include "pichar/group.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace pichar {

namespace {

std::string hex64(u64 v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

u64 fnv_ids(const std::vector<Id>& v, u64 h = 1469598103934665603ull) {
  for (Id x : v) h = fnv1a_u64(x, h);
  return h;
}

class CyclicRealization final : public Realization {
 public:
  explicit CyclicRealization(u64 n) : n_(n) {}
  ElemData identity() const override { return {0}; }
  ElemData compose(const ElemData& a, const ElemData& b) const override {
    return {(std::uint32_t)(((u64)a[0] + b[0]) % n_)};
  }
  std::vector<ElemData> generator_data() const override {
    if (n_ == 1) return {};
    return {{1}};
  }
  std::string describe() const override { return "cyclic(" + std::to_string(n_) + ")"; }
  std::vector<ElemData> enumerate_all() const override {
    std::vector<ElemData> all;
    for (u64 r = 0; r < n_; ++r) all.push_back({(std::uint32_t)r});
    return all;
  }

 private:
  u64 n_;
};

class PermRealization final : public Realization {
 public:
  PermRealization(std::vector<std::vector<std::uint32_t>> gens, std::string label)
      : gens_(std::move(gens)), label_(std::move(label)) {
    PICHAR_CHECK(!gens_.empty(), ErrorKind::InvalidInput, "permutation group needs a generator");
    deg_ = gens_[0].size();
    for (auto& g : gens_) {
      PICHAR_CHECK(g.size() == deg_, ErrorKind::InvalidInput, "permutation degree mismatch");
      std::vector<char> seen(deg_, 0);
      for (auto v : g) {
        PICHAR_CHECK(v < deg_ && !seen[v], ErrorKind::InvalidInput, "not a permutation");
        seen[v] = 1;
      }
    }
  }
  ElemData identity() const override {
    ElemData e(deg_);
    for (std::size_t i = 0; i < deg_; ++i) e[i] = (std::uint32_t)i;
    return e;
  }
  ElemData compose(const ElemData& a, const ElemData& b) const override {
    ElemData c(deg_);
    for (std::size_t i = 0; i < deg_; ++i) c[i] = a[b[i]];
    return c;
  }
  std::vector<ElemData> generator_data() const override {
    return {gens_.begin(), gens_.end()};
  }
  std::string describe() const override {
    u64 h = 1469598103934665603ull;
    for (auto& g : gens_)
      for (auto v : g) h = fnv1a_u64(v, h);
    return "perm(deg=" + std::to_string(deg_) + ",gens#" + hex64(h) +
           (label_.empty() ? "" : "," + label_) + ")";
  }

 private:
  std::vector<std::vector<std::uint32_t>> gens_;
  std::string label_;
  std::size_t deg_;
};

class MatRealization final : public Realization {
 public:
  MatRealization(u64 p, std::uint32_t dim, std::vector<std::vector<std::uint32_t>> gens,
                 std::string label)
      : p_(p), d_(dim), gens_(std::move(gens)), label_(std::move(label)) {
    PICHAR_CHECK(is_prime_u64(p_), ErrorKind::InvalidInput, "matrix field size must be prime");
    PICHAR_CHECK(d_ >= 1 && d_ <= 8, ErrorKind::InvalidInput, "matrix dimension out of range");
    for (auto& g : gens_) {
      PICHAR_CHECK(g.size() == (std::size_t)d_ * d_, ErrorKind::InvalidInput, "matrix size mismatch");
      for (auto v : g) PICHAR_CHECK(v < p_, ErrorKind::InvalidInput, "matrix entry out of field");
    }
  }
  ElemData identity() const override {
    ElemData e((std::size_t)d_ * d_, 0);
    for (std::uint32_t i = 0; i < d_; ++i) e[(std::size_t)i * d_ + i] = 1;
    return e;
  }
  ElemData compose(const ElemData& a, const ElemData& b) const override {
    ElemData c((std::size_t)d_ * d_, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      for (std::uint32_t k = 0; k < d_; ++k) {
        u64 aik = a[(std::size_t)i * d_ + k];
        if (aik == 0) continue;
        for (std::uint32_t j = 0; j < d_; ++j) {
          c[(std::size_t)i * d_ + j] =
              (std::uint32_t)((c[(std::size_t)i * d_ + j] + aik * b[(std::size_t)k * d_ + j]) % p_);
        }
      }
    }
    return c;
  }
  std::vector<ElemData> generator_data() const override {
    return {gens_.begin(), gens_.end()};
  }
  std::string describe() const override {
    u64 h = 1469598103934665603ull;
    for (auto& g : gens_)
      for (auto v : g) h = fnv1a_u64(v, h);
    return "mat(p=" + std::to_string(p_) + ",d=" + std::to_string(d_) + ",gens#" + hex64(h) +
           (label_.empty() ? "" : "," + label_) + ")";
  }

 private:
  u64 p_;
  std::uint32_t d_;
  std::vector<std::vector<std::uint32_t>> gens_;
  std::string label_;
};

class ProductRealization final : public Realization {
 public:
  // act[h][n] = id of h n h^{-1} in N, for every h in H.
  ProductRealization(GroupPtr N, GroupPtr H, std::vector<std::vector<Id>> act)
      : N_(std::move(N)), H_(std::move(H)), act_(std::move(act)) {}
  ElemData identity() const override { return {0, 0}; }
  ElemData compose(const ElemData& a, const ElemData& b) const override {
    return {N_->mul(a[0], act_[a[1]][b[0]]), H_->mul(a[1], b[1])};
  }
  std::vector<ElemData> generator_data() const override {
    std::vector<ElemData> g;
    for (Id n : N_->generator_ids()) g.push_back({n, 0});
    for (Id h : H_->generator_ids()) g.push_back({0, h});
    return g;
  }
  std::string describe() const override {
    u64 h = 1469598103934665603ull;
    for (auto& row : act_) h = fnv_ids(row, h);
    return "semidirect(N=" + N_->describe() + ",H=" + H_->describe() + ",act#" + hex64(h) + ")";
  }
  std::vector<ElemData> enumerate_all() const override {
    std::vector<ElemData> all;
    all.reserve(N_->order() * H_->order());
    for (Id n = 0; n < N_->order(); ++n)
      for (Id h = 0; h < H_->order(); ++h) all.push_back({n, h});
    return all;
  }

 private:
  GroupPtr N_, H_;
  std::vector<std::vector<Id>> act_;
};

class QuotientRealization final : public Realization {
 public:
  QuotientRealization(GroupPtr parent, std::vector<Id> leader_of, std::vector<Id> leaders,
                      u64 nfnv)
      : parent_(std::move(parent)), leader_of_(std::move(leader_of)), leaders_(std::move(leaders)),
        nfnv_(nfnv) {}
  ElemData identity() const override { return {0}; }
  ElemData compose(const ElemData& a, const ElemData& b) const override {
    return {leader_of_[parent_->mul(a[0], b[0])]};
  }
  std::vector<ElemData> generator_data() const override {
    std::vector<ElemData> g;
    for (Id x : parent_->generator_ids()) g.push_back({leader_of_[x]});
    return g;
  }
  std::string describe() const override {
    return "quotient(" + parent_->describe() + ",N#" + hex64(nfnv_) + ")";
  }
  std::vector<ElemData> enumerate_all() const override {
    std::vector<ElemData> all;
    for (Id l : leaders_) all.push_back({l});
    return all;
  }
  const std::vector<Id>& leader_of() const { return leader_of_; }

 private:
  GroupPtr parent_;
  std::vector<Id> leader_of_;
  std::vector<Id> leaders_;
  u64 nfnv_;
};

class SubgroupViewRealization final : public Realization {
 public:
  SubgroupViewRealization(GroupPtr parent, std::vector<Id> members, std::vector<Id> gens)
      : parent_(std::move(parent)), members_(std::move(members)), gens_(std::move(gens)) {}
  ElemData identity() const override { return {0}; }
  ElemData compose(const ElemData& a, const ElemData& b) const override {
    return {parent_->mul(a[0], b[0])};
  }
  std::vector<ElemData> generator_data() const override {
    std::vector<ElemData> g;
    for (Id x : gens_) g.push_back({x});
    return g;
  }
  std::string describe() const override {
    return "sub(" + parent_->describe() + ",members#" + hex64(fnv_ids(members_)) + ")";
  }
  std::vector<ElemData> enumerate_all() const override {
    std::vector<ElemData> all;
    for (Id m : members_) all.push_back({m});
    return all;
  }

  const GroupPtr& parent() const { return parent_; }

 private:
  GroupPtr parent_;
  std::vector<Id> members_;
  std::vector<Id> gens_;
};

}  // namespace

const Group* view_parent(const Group& H) {
  auto* r = dynamic_cast<const SubgroupViewRealization*>(&H.realization());
  return r ? r->parent().get() : nullptr;
}

GroupPtr Group::build(std::shared_ptr<const Realization> r) {
  auto g = std::shared_ptr<Group>(new Group());
  g->real_ = std::move(r);
  const Realization& real = *g->real_;

  ElemData e = real.identity();
  std::vector<ElemData> known = real.enumerate_all();
  if (!known.empty()) {
    PICHAR_CHECK(known.size() <= kElementCap, ErrorKind::CapExceeded, "element cap exceeded");
    PICHAR_INTERNAL(known[0] == e, "enumerated element list must start at the identity");
    g->elems_ = std::move(known);
    for (Id i = 0; i < g->elems_.size(); ++i) {
      bool fresh = g->index_.emplace(g->elems_[i], i).second;
      PICHAR_INTERNAL(fresh, "duplicate element in enumeration");
    }
  } else {
    // breadth-first closure, per-level lexicographic tie-break
    std::vector<ElemData> gens = real.generator_data();
    g->elems_.push_back(e);
    g->index_.emplace(e, 0);
    std::vector<Id> frontier = {0};
    while (!frontier.empty()) {
      std::vector<ElemData> next;
      for (Id f : frontier) {
        for (const ElemData& gen : gens) {
          ElemData child = real.compose(g->elems_[f], gen);
          if (!g->index_.count(child)) next.push_back(std::move(child));
        }
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      frontier.clear();
      for (ElemData& child : next) {
        if (g->index_.count(child)) continue;
        PICHAR_CHECK(g->elems_.size() < kElementCap, ErrorKind::CapExceeded, "element cap exceeded");
        Id id = (Id)g->elems_.size();
        g->index_.emplace(child, id);
        g->elems_.push_back(std::move(child));
        frontier.push_back(id);
      }
    }
  }

  const u64 n = g->elems_.size();

  // generator ids (generators are always in the closure)
  for (const ElemData& gd : real.generator_data()) g->gens_.push_back(g->id_of(gd));

  // identity laws and associativity spot-check on fixed-seed triples;
  // id_of inside mul doubles as a closure check
  std::mt19937_64 rng(0x5EEDu);
  for (int t = 0; t < 24; ++t) {
    Id a = (Id)(rng() % n), b = (Id)(rng() % n), c = (Id)(rng() % n);
    PICHAR_INTERNAL(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)),
                    "composition rule is not associative");
    PICHAR_INTERNAL(g->mul(0, a) == a && g->mul(a, 0) == a, "identity law violated");
  }

  // element orders and inverses by cycling
  g->inv_.resize(n);
  g->order_of_.resize(n);
  g->inv_[0] = 0;
  g->order_of_[0] = 1;
  for (Id a = 1; a < n; ++a) {
    Id prev = a, cur = g->mul(a, a);
    std::uint32_t k = 2;
    while (cur != 0) {
      prev = cur;
      cur = g->mul(cur, a);
      ++k;
      PICHAR_INTERNAL(k <= n + 1, "element order exceeds group order");
    }
    g->order_of_[a] = k;
    g->inv_[a] = prev;
  }
  g->exponent_ = 1;
  for (Id a = 0; a < n; ++a) g->exponent_ = lcm_u64(g->exponent_, g->order_of_[a]);
  g->describe_ = real.describe();
  return g;
}

Id Group::pow(Id a, i64 e) const {
  u64 m = order_of_[a];
  u64 r = (u64)(((e % (i64)m) + (i64)m) % (i64)m);
  Id acc = 0, base = a;
  while (r) {
    if (r & 1) acc = mul(acc, base);
    base = mul(base, base);
    r >>= 1;
  }
  return acc;
}

bool Group::is_abelian() const {
  for (Id a : gens_)
    for (Id b : gens_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<Id> closure(const Group& G, std::vector<Id> seed) {
  std::vector<char> seen(G.order(), 0);
  seen[0] = 1;
  std::vector<Id> queue = {0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    for (Id s : seed) {
      Id y = G.mul(queue[qi], s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

GroupPtr cyclic_group(u64 n) {
  PICHAR_CHECK(n >= 1, ErrorKind::InvalidInput, "cyclic group order must be positive");
  PICHAR_CHECK(n <= Group::kElementCap, ErrorKind::CapExceeded, "element cap exceeded");
  return Group::build(std::make_shared<CyclicRealization>(n));
}

GroupPtr perm_group(std::vector<std::vector<std::uint32_t>> gens, std::string label) {
  return Group::build(std::make_shared<PermRealization>(std::move(gens), std::move(label)));
}

GroupPtr matrix_group(u64 p, std::uint32_t dim, std::vector<std::vector<std::uint32_t>> gens,
                      std::string label) {
  return Group::build(std::make_shared<MatRealization>(p, dim, std::move(gens), std::move(label)));
}

namespace {

/// Validate one generator's action as an automorphism of N: a bijection on
/// ids, multiplicative against every (generator, element) pair — which forces
/// full multiplicativity since every element is a product of generators.
void validate_automorphism(const Group& N, const std::vector<Id>& img) {
  const u64 n = N.order();
  PICHAR_CHECK(img.size() == n, ErrorKind::InvalidInput, "action image has wrong size");
  std::vector<char> seen(n, 0);
  for (Id v : img) {
    PICHAR_CHECK(v < n && !seen[v], ErrorKind::InvalidInput, "action image not a permutation");
    seen[v] = 1;
  }
  PICHAR_CHECK(img[0] == 0, ErrorKind::InvalidInput, "action image must fix the identity");
  for (Id gnn : N.generator_ids()) {
    for (Id x = 0; x < n; ++x) {
      PICHAR_CHECK(img[N.mul(gnn, x)] == N.mul(img[gnn], img[x]), ErrorKind::InvalidInput,
                   "action image is not an automorphism");
    }
  }
}

ProductResult build_product(GroupPtr N, GroupPtr H, const std::vector<std::vector<Id>>& gen_images,
                            bool validate) {
  PICHAR_CHECK(gen_images.size() == H->generator_ids().size(), ErrorKind::InvalidInput,
               "one action image required per complement generator");
  PICHAR_CHECK(N->order() * H->order() <= Group::kElementCap, ErrorKind::CapExceeded,
               "element cap exceeded");
  if (validate)
    for (auto& img : gen_images) validate_automorphism(*N, img);

  // act table for every h in H by breadth-first word composition; revisiting
  // an element via a different word must give the same permutation, which
  // verifies the assignment respects H's relations.
  const u64 nn = N->order(), nh = H->order();
  std::vector<std::vector<Id>> act(nh);
  std::vector<char> have(nh, 0);
  act[0].resize(nn);
  for (Id x = 0; x < nn; ++x) act[0][x] = x;
  have[0] = 1;
  std::vector<Id> queue = {0};
  const auto& hgens = H->generator_ids();
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Id h = queue[qi];
    for (std::size_t j = 0; j < hgens.size(); ++j) {
      Id h2 = H->mul(h, hgens[j]);
      std::vector<Id> composed(nn);
      for (Id x = 0; x < nn; ++x) composed[x] = act[h][gen_images[j][x]];
      if (!have[h2]) {
        act[h2] = std::move(composed);
        have[h2] = 1;
        queue.push_back(h2);
      } else {
        PICHAR_CHECK(act[h2] == composed, ErrorKind::InvalidInput,
                     "action does not respect the complement group's relations");
      }
    }
  }
  PICHAR_INTERNAL(queue.size() == nh, "complement not generated by its generators");

  ProductResult out;
  out.group = Group::build(std::make_shared<ProductRealization>(N, H, std::move(act)));
  PICHAR_INTERNAL(out.group->order() == nn * nh, "product order mismatch");
  for (Id i = 0; i < out.group->order(); ++i) {
    const ElemData& d = out.group->data(i);
    if (d[1] == 0) out.n_members.push_back(i);
    if (d[0] == 0) out.h_members.push_back(i);
  }
  return out;
}

}  // namespace

ProductResult semidirect_product(GroupPtr N, GroupPtr H,
                                 const std::vector<std::vector<Id>>& gen_images) {
  return build_product(std::move(N), std::move(H), gen_images, true);
}

ProductResult direct_product(GroupPtr N, GroupPtr H) {
  std::vector<std::vector<Id>> trivial(H->generator_ids().size());
  for (auto& img : trivial) {
    img.resize(N->order());
    for (Id x = 0; x < N->order(); ++x) img[x] = x;
  }
  return build_product(std::move(N), std::move(H), trivial, false);
}

QuotientResult quotient_group(GroupPtr G, const std::vector<Id>& normal_members) {
  const u64 n = G->order(), m = normal_members.size();
  PICHAR_CHECK(m >= 1 && normal_members[0] == 0, ErrorKind::InvalidInput,
               "subgroup must contain the identity");
  PICHAR_CHECK(n % m == 0, ErrorKind::InvalidInput, "subgroup size must divide group order");
  std::vector<char> in_n(n, 0);
  for (Id x : normal_members) {
    PICHAR_CHECK(x < n && !in_n[x], ErrorKind::InvalidInput, "bad subgroup member list");
    in_n[x] = 1;
  }
  for (Id a : normal_members)
    for (Id b : normal_members)
      PICHAR_CHECK(in_n[G->mul(a, b)], ErrorKind::InvalidInput, "member set not closed");
  for (Id g : G->generator_ids())
    for (Id x : normal_members)
      PICHAR_CHECK(in_n[G->conj(x, g)], ErrorKind::InvalidInput, "subgroup is not normal");

  std::vector<Id> leader_of(n, (Id)n);
  std::vector<Id> leaders;
  for (Id x = 0; x < n; ++x) {
    if (leader_of[x] != (Id)n) continue;
    leaders.push_back(x);
    for (Id nm : normal_members) leader_of[G->mul(x, nm)] = x;
  }
  PICHAR_INTERNAL(leaders.size() == n / m, "coset count mismatch");

  QuotientResult out;
  out.group = Group::build(std::make_shared<QuotientRealization>(
      G, leader_of, leaders, fnv_ids(normal_members)));
  PICHAR_INTERNAL(out.group->order() == n / m, "quotient order mismatch");
  out.projection.resize(n);
  for (Id x = 0; x < n; ++x) out.projection[x] = out.group->id_of({leader_of[x]});
  return out;
}

std::vector<Id> small_generating_set(const Group& G, const std::vector<Id>& members) {
  PICHAR_CHECK(!members.empty() && members[0] == 0, ErrorKind::InvalidInput,
               "subgroup must contain the identity");
  // Greedy: repeatedly adjoin the least member outside the running closure
  // (deterministic; at most log2 |H| rounds since each step at least doubles).
  std::vector<Id> gens;
  std::vector<Id> have = {0};
  while (have.size() < members.size()) {
    Id pick = 0;
    bool found = false;
    std::size_t hi = 0;
    for (Id m : members) {
      while (hi < have.size() && have[hi] < m) ++hi;
      if (hi >= have.size() || have[hi] != m) {
        pick = m;
        found = true;
        break;
      }
    }
    PICHAR_INTERNAL(found, "closure already covers all members");
    gens.push_back(pick);
    have = closure(G, gens);
    for (Id x : have)
      PICHAR_CHECK(std::binary_search(members.begin(), members.end(), x), ErrorKind::InvalidInput,
                   "member set not closed");
  }
  return gens;
}

GroupPtr subgroup_view(GroupPtr G, std::vector<Id> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  PICHAR_CHECK(!members.empty() && members[0] == 0, ErrorKind::InvalidInput,
               "subgroup must contain the identity");
  PICHAR_CHECK(members.back() < G->order(), ErrorKind::InvalidInput, "member id out of range");
  PICHAR_CHECK(G->order() % members.size() == 0, ErrorKind::InvalidInput,
               "subgroup size must divide group order");
  std::vector<Id> gens = small_generating_set(*G, members);
  return Group::build(std::make_shared<SubgroupViewRealization>(G, std::move(members), std::move(gens)));
}

}  // namespace pichar
