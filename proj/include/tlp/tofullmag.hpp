#pragma once

// Completion of a partial state sequence into a full one.  A forward sweep
// over (1,2)..(n-1,n) followed by a backward sweep over (n,n-1)..(2,1) copies
// tools of the left state into free slots of the right state.  Copying a tool
// that is already loaded on the neighbouring moment never creates a switch.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tlp/core.hpp"

namespace tlp {

namespace detail {

// Tools of states[from] absent from states[to] are added to states[to],
// smallest ids first, until states[to] is full.  `stamp` is a per-tool
// scratch array; `epoch` is a fresh value for this pair.
inline void fill_from(MagazineSequence& seq, Moment from, Moment to,
                      std::vector<std::int64_t>& stamp, std::int64_t epoch,
                      std::vector<ToolId>& scratch) {
  const int free = seq.capacity() - seq.state_size(to);
  if (free <= 0) return;
  for (ToolId t : seq.state(to)) stamp[static_cast<std::size_t>(t)] = epoch;
  scratch.clear();
  for (ToolId t : seq.state(from)) {
    if (stamp[static_cast<std::size_t>(t)] != epoch) scratch.push_back(t);
  }
  if (scratch.empty()) return;
  auto take = std::min<std::size_t>(scratch.size(), static_cast<std::size_t>(free));
  if (take < scratch.size()) {
    std::nth_element(scratch.begin(),
                     scratch.begin() + static_cast<std::ptrdiff_t>(take),
                     scratch.end());
  }
  for (std::size_t k = 0; k < take; ++k) seq.insert(to, scratch[k]);
}

}  // namespace detail

/// Fills the empty slots of `partial` without adding switches.  The result
/// is full whenever m >= C; for m < C every state ends up holding all m tools
/// and the sequence capacity is min(C, m).
inline MagazineSequence to_full_mag(const MagazineSequence& partial,
                                    const Instance& inst) {
  if (partial.moments() != inst.n()) {
    throw Error(ErrorKind::InfeasibleInput,
                "sequence length does not match job count");
  }
  const int cap = std::min(partial.capacity(), inst.effective_capacity());
  std::vector<std::int64_t> stamp(
      static_cast<std::size_t>(std::max<int>(inst.m(), partial.max_tool())) + 1, 0);

  MagazineSequence seq(inst.n(), cap);
  std::int64_t epoch = 0;
  for (Moment i = 1; i <= inst.n(); ++i) {
    ++epoch;
    if (partial.state_size(i) > cap) {
      throw Error(ErrorKind::CapacityExceeded,
                  "state " + std::to_string(i) + " exceeds capacity", i);
    }
    for (ToolId t : partial.state(i)) {
      stamp[static_cast<std::size_t>(t)] = epoch;
      seq.insert(i, t);
    }
    for (ToolId t : inst.tools(i)) {
      if (stamp[static_cast<std::size_t>(t)] != epoch) {
        throw Error(ErrorKind::InfeasibleInput,
                    "tool " + std::to_string(t) + " required at moment " +
                        std::to_string(i) + " is missing",
                    i);
      }
    }
  }

  std::vector<ToolId> scratch;
  scratch.reserve(static_cast<std::size_t>(cap));
  for (Moment i = 1; i < inst.n(); ++i) {
    detail::fill_from(seq, i, i + 1, stamp, ++epoch, scratch);
  }
  for (Moment i = inst.n(); i > 1; --i) {
    detail::fill_from(seq, i, i - 1, stamp, ++epoch, scratch);
  }
  return seq;
}

}  // namespace tlp
