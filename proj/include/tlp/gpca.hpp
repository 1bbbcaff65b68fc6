#pragma once

// Greedy pipe construction.  Pipes are considered in ascending order of their
// end moment; a pipe is built whenever every intermediate state still has a
// free slot.  The number of built pipes is maximal, so the optimal switch
// count is sum|T_i| - C - pipes_count.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tlp/core.hpp"
#include "tlp/tofullmag.hpp"

namespace tlp {

struct GpcaOptions {
  bool keep_states = true;  // materialize the partial state sequence
  bool keep_pipes = true;   // record the list of built pipes
};

struct GpcaStats {
  std::int64_t insertions = 0;          // tools added to intermediate states
  std::int64_t last_full_regressions = 0;  // times last_full moved backwards
};

struct GpcaResult {
  std::int64_t pipes_count = 0;
  MagazineSequence states;  // empty unless keep_states
  std::vector<Pipe> pipes;  // empty unless keep_pipes; ascending end moment
  GpcaStats stats;
};

namespace detail {

template <bool KeepStates, bool KeepPipes>
GpcaResult gpca_fast_impl(const Instance& inst) {
  const int n = inst.n();
  const int cap = inst.effective_capacity();

  GpcaResult out;
  MagazineSequence states;
  std::vector<int> fill;
  if constexpr (KeepStates) {
    states = MagazineSequence::from_instance(inst, cap);
  } else {
    fill.resize(static_cast<std::size_t>(n) + 1);
    for (Moment i = 1; i <= n; ++i) {
      fill[static_cast<std::size_t>(i)] = static_cast<int>(inst.tools(i).size());
    }
  }

  // last_seen[t] = latest moment that used t, -1 before the first use.
  std::vector<Moment> last_seen(static_cast<std::size_t>(inst.m()) + 1, -1);
  Moment last_full = 0;
  std::int64_t pipes_count = 0;

  for (Moment e = 1; e <= n; ++e) {
    for (ToolId t : inst.tools(e)) {
      Moment& seen = last_seen[static_cast<std::size_t>(t)];
#ifdef TLP_GPCA_MUTANT
      if (seen >= 0 && last_full < seen) {
#else
      if (seen >= 0 && last_full <= seen) {
#endif
        ++pipes_count;
        if constexpr (KeepPipes) out.pipes.push_back({seen, e, t});
        for (Moment i = seen + 1; i < e; ++i) {
          int size;
          if constexpr (KeepStates) {
            states.insert(i, t);
            size = states.state_size(i);
          } else {
            size = ++fill[static_cast<std::size_t>(i)];
          }
          ++out.stats.insertions;
          if (size == cap) {
            if (i < last_full) ++out.stats.last_full_regressions;
            last_full = i;
          }
        }
      }
      seen = e;
    }
    const int size_e = KeepStates ? states.state_size(e)
                                  : fill[static_cast<std::size_t>(e)];
    if (size_e == cap) {
      if (e < last_full) ++out.stats.last_full_regressions;
      last_full = e;
    }
  }

  out.pipes_count = pipes_count;
  if constexpr (KeepStates) out.states = std::move(states);
  return out;
}

}  // namespace detail

/// Single-pass O(Cn) pipe construction using per-tool last-use moments and
/// the last moment at which the magazine was full.
inline GpcaResult gpca_fast(const Instance& inst, GpcaOptions options = {}) {
  if (options.keep_states) {
    return options.keep_pipes ? detail::gpca_fast_impl<true, true>(inst)
                              : detail::gpca_fast_impl<true, false>(inst);
  }
  return options.keep_pipes ? detail::gpca_fast_impl<false, true>(inst)
                            : detail::gpca_fast_impl<false, false>(inst);
}

/// Reference construction that scans every intermediate state of each
/// candidate.  `order` receives the candidates ending at one moment (each
/// starting at the tool's most recent use) and may permute them in place.
template <class CandidateOrder>
GpcaResult gpca_naive(const Instance& inst, CandidateOrder&& order) {
  const int cap = inst.effective_capacity();
  GpcaResult out;
  out.states = MagazineSequence::from_instance(inst, cap);
  std::vector<Moment> last_use(static_cast<std::size_t>(inst.m()) + 1, 0);
  std::vector<Pipe> candidates;

  for (Moment e = 1; e <= inst.n(); ++e) {
    candidates.clear();
    for (ToolId t : inst.tools(e)) {
      const Moment s = last_use[static_cast<std::size_t>(t)];
      if (s != 0) candidates.push_back({s, e, t});
    }
    order(std::span<Pipe>(candidates));
    for (const Pipe& p : candidates) {
      bool room = true;
      for (Moment i = p.start + 1; i < p.end && room; ++i) {
        room = out.states.state_size(i) < cap;
      }
      if (!room) continue;
      for (Moment i = p.start + 1; i < p.end; ++i) {
        out.states.insert(i, p.tool);
        ++out.stats.insertions;
      }
      ++out.pipes_count;
      out.pipes.push_back(p);
    }
    for (ToolId t : inst.tools(e)) last_use[static_cast<std::size_t>(t)] = e;
  }
  return out;
}

/// Naive construction with candidates in ascending tool id.
inline GpcaResult gpca_naive(const Instance& inst) {
  return gpca_naive(inst, [](std::span<Pipe> c) {
    std::sort(c.begin(), c.end(),
              [](const Pipe& a, const Pipe& b) { return a.tool < b.tool; });
  });
}

/// Naive construction with candidates shuffled by a seeded generator.
inline GpcaResult gpca_naive_shuffled(const Instance& inst, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return gpca_naive(inst, [&rng](std::span<Pipe> c) {
    std::shuffle(c.begin(), c.end(), rng);
  });
}

/// Optimal switch count and a full optimal state sequence.
inline SolveResult solve(const Instance& inst) {
  GpcaResult g = gpca_fast(inst, {.keep_states = true, .keep_pipes = false});
  SolveResult result;
  result.pipes_count = g.pipes_count;
  result.min_switches = switches_from_pipes(inst, g.pipes_count);
  result.sequence = to_full_mag(g.states, inst);
  const std::int64_t realized = switches(result.sequence);
  if (realized != result.min_switches) {
    throw Error(ErrorKind::InternalInvariant,
                "completed sequence has " + std::to_string(realized) +
                    " switches, expected " +
                    std::to_string(result.min_switches));
  }
  return result;
}

}  // namespace tlp
