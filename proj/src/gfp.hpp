#pragma once

// Greatest fixpoint over lazily discovered states. Each state carries a list
// of demands; a demand is satisfied while at least one of its alternatives
// (one or two states) is entirely alive. States whose local test fails, or
// with an unsatisfiable demand, are deleted and the deletion propagates.

#include <cstddef>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "asimkit/error.hpp"

namespace asimkit::detail {

template <class Key, class Hash = std::hash<Key>>
class Gfp {
 public:
  explicit Gfp(std::size_t state_cap) : cap_(state_cap) {}

  int intern(const Key& k) {
    auto [it, fresh] = ids_.try_emplace(k, static_cast<int>(keys_.size()));
    if (fresh) {
      if (keys_.size() >= cap_) throw RelationError("state space exceeds " + std::to_string(cap_) + " states");
      keys_.push_back(k);
    }
    return it->second;
  }

  int find(const Key& k) const {
    auto it = ids_.find(k);
    return it == ids_.end() ? -1 : it->second;
  }

  void begin_demand(int owner) {
    demand_owner_.push_back(owner);
    demand_count_.push_back(0);
  }

  void add_alternative(int a, int b = -1) {
    alt_demand_.push_back(static_cast<int>(demand_owner_.size()) - 1);
    alt_a_.push_back(a);
    alt_b_.push_back(b);
    ++demand_count_.back();
  }

  /// expand(id, key) registers the demands of `key` and returns whether its
  /// local test passed; it is not called again for the same state.
  template <class Expand>
  void explore(const Key& seed, Expand&& expand) {
    intern(seed);
    for (std::size_t next = 0; next < keys_.size(); ++next) {
      const Key k = keys_[next];
      const bool ok = expand(static_cast<int>(next), k);
      local_ok_.push_back(ok);
    }
  }

  void solve() {
    const std::size_t n = keys_.size();
    alive_.assign(local_ok_.begin(), local_ok_.end());
    std::vector<std::vector<int>> uses(n);
    for (std::size_t alt = 0; alt < alt_a_.size(); ++alt) {
      uses[alt_a_[alt]].push_back(static_cast<int>(alt));
      if (alt_b_[alt] >= 0 && alt_b_[alt] != alt_a_[alt]) uses[alt_b_[alt]].push_back(static_cast<int>(alt));
    }
    std::vector<char> alt_alive(alt_a_.size(), 1);
    std::deque<int> work;
    for (std::size_t s = 0; s < n; ++s)
      if (!alive_[s]) work.push_back(static_cast<int>(s));
    for (std::size_t d = 0; d < demand_owner_.size(); ++d) {
      const int owner = demand_owner_[d];
      if (demand_count_[d] == 0 && alive_[owner]) {
        alive_[owner] = 0;
        work.push_back(owner);
      }
    }
    while (!work.empty()) {
      const int s = work.front();
      work.pop_front();
      for (int alt : uses[s]) {
        if (!alt_alive[alt]) continue;
        alt_alive[alt] = 0;
        const int d = alt_demand_[alt];
        if (--demand_count_[d] == 0) {
          const int owner = demand_owner_[d];
          if (alive_[owner]) {
            alive_[owner] = 0;
            work.push_back(owner);
          }
        }
      }
    }
  }

  std::size_t size() const { return keys_.size(); }
  const Key& key(int id) const { return keys_[id]; }
  bool alive(int id) const { return alive_[id] != 0; }

 private:
  std::size_t cap_;
  std::unordered_map<Key, int, Hash> ids_;
  std::vector<Key> keys_;
  std::vector<char> local_ok_;
  std::vector<char> alive_;
  std::vector<int> demand_owner_;
  std::vector<int> demand_count_;
  std::vector<int> alt_demand_;
  std::vector<int> alt_a_;
  std::vector<int> alt_b_;
};

}  // namespace asimkit::detail
