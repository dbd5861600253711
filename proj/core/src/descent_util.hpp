// Shared subgroup-view bookkeeping for the descent engines (ordinary and
// partial monomiality): one cached view and one ambient->local index per
// canonical member set, stored on the ambient group so character tables
// computed for one engine are reused by every other. The empty member list
// denotes the ambient group itself (a real subgroup always contains the
// identity), keeping memo keys small.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

#include "pichar/group.hpp"

namespace pichar {
namespace detail {

struct ViewStore {
  std::mutex mu;
  std::map<Members, GroupPtr> views;
  std::map<Members, std::vector<Id>> backs;  // ambient id -> view id
};

inline ViewStore& view_store(const Group& G) {
  const std::shared_ptr<ViewStore>& p = G.analysis<std::shared_ptr<ViewStore>>(
      "subgroup_view_store", [] { return std::make_shared<ViewStore>(); });
  return *p;
}

inline GroupPtr view_of(const Group& G, ViewStore& s, const Members& m) {
  if (m.empty()) return G.shared_from_this();
  {
    std::lock_guard<std::mutex> lk(s.mu);
    auto it = s.views.find(m);
    if (it != s.views.end()) return it->second;
  }
  GroupPtr v = subgroup_view(G.shared_from_this(), m);
  std::lock_guard<std::mutex> lk(s.mu);
  return s.views.emplace(m, std::move(v)).first->second;
}

inline const std::vector<Id>& back_of(const Group& G, ViewStore& s, const Members& m) {
  {
    std::lock_guard<std::mutex> lk(s.mu);
    auto it = s.backs.find(m);
    if (it != s.backs.end()) return it->second;
  }
  GroupPtr v = view_of(G, s, m);
  std::vector<Id> idx(G.order(), static_cast<Id>(G.order()));
  if (m.empty()) {
    std::iota(idx.begin(), idx.end(), Id{0});
  } else {
    for (Id h = 0; h < v->order(); ++h) idx[v->data(h)[0]] = h;
  }
  std::lock_guard<std::mutex> lk(s.mu);
  return s.backs.emplace(m, std::move(idx)).first->second;
}

inline Id to_ambient(const Group& G, const Group& view, Id local) {
  return (&view == &G) ? local : view.data(local)[0];
}

}  // namespace detail
}  // namespace pichar
