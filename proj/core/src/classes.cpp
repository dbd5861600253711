#include "pichar/classes.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "pichar/errors.hpp"

namespace pichar {

namespace {

constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

}  // namespace

const ConjClasses& conjugacy_classes(const Group& G) {
  return G.analysis<ConjClasses>("conjugacy_classes", [&G]() {
    const u64 n = G.order();
    std::vector<std::uint32_t> raw_class(n, kUnassigned);
    std::vector<std::vector<Id>> orbits;

    // Ascending-id orbit scan: the first unassigned id is the least member of
    // its class, so each orbit's representative is members.front() for free.
    for (Id g = 0; g < n; ++g) {
      if (raw_class[g] != kUnassigned) continue;
      const auto ci = static_cast<std::uint32_t>(orbits.size());
      std::vector<Id> orbit{g};
      raw_class[g] = ci;
      for (std::size_t qi = 0; qi < orbit.size(); ++qi) {
        for (Id x : G.generator_ids()) {
          const Id y = G.conj(orbit[qi], x);
          if (raw_class[y] == kUnassigned) {
            raw_class[y] = ci;
            orbit.push_back(y);
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      orbits.push_back(std::move(orbit));
    }

    // Identity first, then representative order, then least representative.
    std::vector<std::uint32_t> perm(orbits.size());
    std::iota(perm.begin(), perm.end(), 0u);
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
      const Id ra = orbits[a].front();
      const Id rb = orbits[b].front();
      const u64 oa = (ra == G.identity()) ? 0 : G.element_order(ra);
      const u64 ob = (rb == G.identity()) ? 0 : G.element_order(rb);
      if (oa != ob) return oa < ob;
      return ra < rb;
    });

    ConjClasses cc;
    cc.class_of.assign(n, kUnassigned);
    cc.reps.reserve(orbits.size());
    for (std::uint32_t newci = 0; newci < perm.size(); ++newci) {
      std::vector<Id>& orbit = orbits[perm[newci]];
      for (Id m : orbit) cc.class_of[m] = newci;
      cc.reps.push_back(orbit.front());
      cc.sizes.push_back(orbit.size());
      cc.rep_orders.push_back(G.element_order(orbit.front()));
      cc.members.push_back(std::move(orbit));
    }

    PICHAR_INTERNAL(cc.reps[0] == G.identity() && cc.sizes[0] == 1,
                    "identity class must come first");
    u64 total = 0;
    for (u64 s : cc.sizes) {
      PICHAR_INTERNAL(s != 0 && n % s == 0, "class size must divide the group order");
      total += s;
    }
    PICHAR_INTERNAL(total == n, "classes must partition the group");

    cc.inverse_class.resize(cc.count());
    for (std::uint32_t c = 0; c < cc.count(); ++c) {
      cc.inverse_class[c] = cc.class_of[G.inv(cc.reps[c])];
    }
    return cc;
  });
}

std::uint32_t class_power(const Group& G, const ConjClasses& cc, std::uint32_t c, i64 k) {
  PICHAR_CHECK(c < cc.count(), ErrorKind::InvalidInput, "class index out of range");
  return cc.class_of[G.pow(cc.reps[c], k)];
}

}  // namespace pichar
