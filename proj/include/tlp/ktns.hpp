#pragma once

// Keep Tool Needed Soonest.  States are built left to right; free slots of
// M_i are filled from M_{i-1} \ T_i (from all other tools for M_1) with the
// tools whose next use comes first.  Ties, including tools never needed
// again, go to the smallest id.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "tlp/core.hpp"

namespace tlp {

struct KtnsTrace {
  std::vector<std::int64_t> increments;  // |M_{i+1} \ M_i| for i = 1..n-1
  std::int64_t examinations = 0;         // tool visits, O(mn)
};

inline SolveResult ktns_solve(const Instance& inst, KtnsTrace* trace = nullptr) {
  const int n = inst.n();
  const int m = inst.m();
  const int cap = inst.effective_capacity();
  const auto width = static_cast<std::size_t>(m) + 1;
  const Moment never = n + 1;

  for (Moment i = 1; i <= n; ++i) {
    if (static_cast<int>(inst.tools(i).size()) > cap) {
      throw Error(ErrorKind::CapacityExceeded,
                  "job " + std::to_string(i) + " does not fit the magazine", i);
    }
  }

  std::int64_t examinations = 0;
  // next_use[i * width + t]: first moment >= i needing t; row n+1 is "never".
  std::vector<Moment> next_use(static_cast<std::size_t>(n + 2) * width, never);
  for (Moment i = n; i >= 1; --i) {
    const auto row = static_cast<std::size_t>(i) * width;
    std::copy_n(next_use.begin() + static_cast<std::ptrdiff_t>(row + width),
                width, next_use.begin() + static_cast<std::ptrdiff_t>(row));
    for (ToolId t : inst.tools(i)) next_use[row + static_cast<std::size_t>(t)] = i;
    examinations += m;
  }

  SolveResult result;
  result.sequence = MagazineSequence(n, cap);
  std::vector<unsigned char> loaded(width, 0), prev(width, 0);
  std::vector<ToolId> candidates;
  candidates.reserve(width);
  std::int64_t total = 0;

  for (Moment i = 1; i <= n; ++i) {
    std::fill(loaded.begin(), loaded.end(), 0);
    std::int64_t loads = 0;
    for (ToolId t : inst.tools(i)) {
      loaded[static_cast<std::size_t>(t)] = 1;
      result.sequence.insert(i, t);
      if (!prev[static_cast<std::size_t>(t)]) ++loads;
    }

    const auto free = static_cast<std::size_t>(cap) - inst.tools(i).size();
    if (free > 0) {
      candidates.clear();
      for (ToolId t = 1; t <= m; ++t) {
        ++examinations;
        if (loaded[static_cast<std::size_t>(t)]) continue;
        if (i == 1 || prev[static_cast<std::size_t>(t)]) candidates.push_back(t);
      }
      const auto row = static_cast<std::size_t>(i) * width;
      auto sooner = [&](ToolId a, ToolId b) {
        const Moment na = next_use[row + static_cast<std::size_t>(a)];
        const Moment nb = next_use[row + static_cast<std::size_t>(b)];
        return na != nb ? na < nb : a < b;
      };
      const auto take = std::min(free, candidates.size());
      std::partial_sort(candidates.begin(),
                        candidates.begin() + static_cast<std::ptrdiff_t>(take),
                        candidates.end(), sooner);
      for (std::size_t k = 0; k < take; ++k) {
        loaded[static_cast<std::size_t>(candidates[k])] = 1;
        result.sequence.insert(i, candidates[k]);
      }
    }

    if (i > 1) {
      total += loads;
      if (trace) trace->increments.push_back(loads);
    }
    std::swap(loaded, prev);
  }

  if (trace) trace->examinations = examinations;
  result.min_switches = total;
  result.pipes_count = inst.total_demand() - cap - total;
  return result;
}

}  // namespace tlp
