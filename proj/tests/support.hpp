#pragma once

// Test-only oracles.  Everything here is written against the set-based
// definitions directly and shares no code path with the library solvers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "tlp/core.hpp"
#include "tlp/instances.hpp"

namespace tlp::testing {

using Sets = std::vector<std::vector<ToolId>>;

inline Instance example1() {
  return make_instance(4, {{1, 2}, {2, 3}, {4, 5, 6}, {1, 4, 6, 7}, {3, 4, 6}});
}

// Final magazine states of the worked example (KTNS and ToFullMag agree).
inline Sets example1_states() {
  return {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 4, 5, 6}, {1, 4, 6, 7}, {1, 3, 4, 6}};
}

inline std::set<ToolId> as_set(const std::vector<ToolId>& v) {
  return {v.begin(), v.end()};
}

/// sum |M_{i+1} \ M_i| with std::set_difference.
inline std::int64_t brute_switches(const Sets& states) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    auto a = as_set(states[i]);
    auto b = as_set(states[i + 1]);
    std::vector<ToolId> diff;
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::back_inserter(diff));
    total += static_cast<std::int64_t>(diff.size());
  }
  return total;
}

/// Triple loop over all (s, e, t) straight from the pipe definition.
inline std::vector<Pipe> brute_pipes(const Sets& states, const Instance& inst) {
  std::vector<Pipe> out;
  const int n = inst.n();
  for (Moment s = 1; s <= n; ++s) {
    for (Moment e = s + 1; e <= n; ++e) {
      for (ToolId t = 1; t <= inst.m(); ++t) {
        auto ts = as_set(std::vector<ToolId>(inst.tools(s).begin(), inst.tools(s).end()));
        auto te = as_set(std::vector<ToolId>(inst.tools(e).begin(), inst.tools(e).end()));
        if (!ts.count(t) || !te.count(t)) continue;
        bool ok = true;
        for (Moment i = s + 1; i < e; ++i) {
          auto ti = inst.tools(i);
          if (std::find(ti.begin(), ti.end(), t) != ti.end()) ok = false;
          if (!as_set(states[static_cast<std::size_t>(i - 1)]).count(t)) ok = false;
        }
        if (ok) out.push_back({s, e, t});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All k-subsets of 1..m that contain `need`.
inline Sets supersets_of(const std::vector<ToolId>& need, int m, int k) {
  Sets out;
  std::vector<ToolId> cur;
  std::function<void(ToolId)> rec = [&](ToolId next) {
    if (static_cast<int>(cur.size()) == k) {
      if (std::includes(cur.begin(), cur.end(), need.begin(), need.end())) {
        out.push_back(cur);
      }
      return;
    }
    for (ToolId t = next; t <= m; ++t) {
      cur.push_back(t);
      rec(t + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

/// Exhaustive search over every full feasible sequence, no memoization.
inline std::int64_t recursive_min_switches(const Instance& inst) {
  const int cap = inst.effective_capacity();
  std::vector<Sets> options;
  for (Moment i = 1; i <= inst.n(); ++i) {
    std::vector<ToolId> need(inst.tools(i).begin(), inst.tools(i).end());
    options.push_back(supersets_of(need, inst.m(), cap));
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  Sets chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == options.size()) {
      best = std::min(best, brute_switches(chosen));
      return;
    }
    for (const auto& s : options[i]) {
      chosen.push_back(s);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return best;
}

/// Instance in the small corpus: n in [1,6], m in [2,8], C in [1,4], m >= C.
/// Roughly one job in twelve needs no tools when `allow_empty`.
inline Instance random_small_instance(std::mt19937_64& rng, bool allow_empty = false) {
  while (true) {
    const int n = static_cast<int>(uniform_int(rng, 1, 6));
    const int m = static_cast<int>(uniform_int(rng, 2, 8));
    const int cap = static_cast<int>(uniform_int(rng, 1, std::min(4, m)));
    RawInstance raw;
    raw.capacity = cap;
    for (int i = 0; i < n; ++i) {
      const int lo = allow_empty && uniform_below(rng, 12) == 0 ? 0 : 1;
      const int k = lo == 0 ? 0 : static_cast<int>(uniform_int(rng, 1, cap));
      auto subset = random_subset(rng, m, k);
      raw.tool_sets.emplace_back(subset.begin(), subset.end());
    }
    bool any = false;
    for (const auto& s : raw.tool_sets) any = any || !s.empty();
    if (!any) continue;
    Instance inst = validate_instance(raw);
    if (inst.m() >= inst.capacity()) return inst;
  }
}

/// Feasible sequence: T_i plus random extra tools.  `full` fills every state
/// to the effective capacity; otherwise each state gets a random size.
inline Sets random_feasible_states(std::mt19937_64& rng, const Instance& inst,
                                   bool full) {
  const int cap = inst.effective_capacity();
  Sets out;
  for (Moment i = 1; i <= inst.n(); ++i) {
    std::vector<ToolId> s(inst.tools(i).begin(), inst.tools(i).end());
    const int lo = static_cast<int>(s.size());
    const int target = full ? cap : static_cast<int>(uniform_int(rng, lo, cap));
    std::vector<ToolId> rest;
    for (ToolId t = 1; t <= inst.m(); ++t) {
      if (std::find(s.begin(), s.end(), t) == s.end()) rest.push_back(t);
    }
    for (std::size_t k = rest.size(); k > 1; --k) {
      std::swap(rest[k - 1], rest[uniform_below(rng, k)]);
    }
    for (int k = lo; k < target; ++k) s.push_back(rest[static_cast<std::size_t>(k - lo)]);
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace tlp::testing
