#pragma once

// Ground truth for small instances.
//
// exact_min_switches runs a dynamic program over moments whose states are all
// C-subsets of the tool universe that contain T_i.  The path decomposition
// splits every kept-tool run of a (possibly partial) sequence into one of four
// classes, which gives an exact accounting of where switches come from:
//
//   pipe     tool used at both ends, idle in between
//   h1_pre   loaded early, used only at the right end
//   h1_post  kept after a use, removed before the next one
//   h0       loaded and removed without ever being used
//
// For a full sequence, switches = sum|T_i| - C - |pipes| + |h0|.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <tuple>
#include <vector>

#include "tlp/core.hpp"

namespace tlp {

inline constexpr std::int64_t kDefaultOracleBudget = 10'000'000;

/// C(n, k), saturating at INT64_MAX.
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::int64_t>::max()) {
      return std::numeric_limits<std::int64_t>::max();
    }
  }
  return static_cast<std::int64_t>(r);
}

struct ExactResult {
  std::int64_t min_switches = 0;
  MagazineSequence sequence;
};

/// Exact optimum by exhaustive DP.  Throws BudgetExceeded when
/// binom(m, C) * n exceeds `budget` or the tool universe is wider than 64.
inline ExactResult exact_min_switches(const Instance& inst,
                                      std::int64_t budget = kDefaultOracleBudget) {
  const int n = inst.n();
  const int m = inst.m();
  const int cap = inst.effective_capacity();
  if (m > 64) {
    throw Error(ErrorKind::BudgetExceeded,
                "oracle supports at most 64 tools, instance has " +
                    std::to_string(m));
  }
  const std::int64_t per_moment = binomial(m, cap);
  const std::int64_t cells =
      per_moment > budget ? std::numeric_limits<std::int64_t>::max()
                          : per_moment * n;
  if (cells > budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "DP needs " + std::to_string(cells) + " cells, budget " +
                    std::to_string(budget),
                cells);
  }

  using Mask = std::uint64_t;
  std::vector<Mask> subsets;
  subsets.reserve(static_cast<std::size_t>(per_moment));
  {
    const Mask full = m == 64 ? ~Mask{0} : ((Mask{1} << m) - 1);
    Mask s = cap == 64 ? ~Mask{0} : ((Mask{1} << cap) - 1);
    while (true) {
      subsets.push_back(s);
      if (s == 0) break;
      // Gosper's hack: next larger integer with the same popcount.
      const Mask c = s & (~s + 1);
      const Mask r = s + c;
      if (r == 0 || (r & ~full) != 0) break;
      s = (((r ^ s) >> 2) / c) | r;
      if ((s & ~full) != 0) break;
    }
  }

  std::vector<std::vector<Mask>> layer(static_cast<std::size_t>(n));
  std::int64_t transitions = 0;
  for (Moment i = 1; i <= n; ++i) {
    Mask need = 0;
    for (ToolId t : inst.tools(i)) need |= Mask{1} << (t - 1);
    auto& L = layer[static_cast<std::size_t>(i - 1)];
    for (Mask s : subsets) {
      if ((s & need) == need) L.push_back(s);
    }
    if (i > 1) {
      transitions += static_cast<std::int64_t>(L.size()) *
                     static_cast<std::int64_t>(layer[static_cast<std::size_t>(i - 2)].size());
    }
  }
  if (transitions > 100 * budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "DP needs " + std::to_string(transitions) + " transitions",
                transitions);
  }

  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::vector<std::int64_t>> cost(static_cast<std::size_t>(n));
  std::vector<std::vector<std::int32_t>> from(static_cast<std::size_t>(n));
  cost[0].assign(layer[0].size(), 0);
  from[0].assign(layer[0].size(), -1);
  for (std::size_t i = 1; i < static_cast<std::size_t>(n); ++i) {
    cost[i].assign(layer[i].size(), inf);
    from[i].assign(layer[i].size(), -1);
    for (std::size_t b = 0; b < layer[i].size(); ++b) {
      for (std::size_t a = 0; a < layer[i - 1].size(); ++a) {
        const std::int64_t c =
            cost[i - 1][a] + cap - std::popcount(layer[i - 1][a] & layer[i][b]);
        if (c < cost[i][b]) {
          cost[i][b] = c;
          from[i][b] = static_cast<std::int32_t>(a);
        }
      }
    }
  }

  const auto& last = cost.back();
  auto best = static_cast<std::size_t>(
      std::min_element(last.begin(), last.end()) - last.begin());
  ExactResult result;
  result.min_switches = last[best];
  std::vector<std::vector<ToolId>> states(static_cast<std::size_t>(n));
  for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) {
    const Mask s = layer[i][best];
    for (int b = 0; b < m; ++b) {
      if (s & (Mask{1} << b)) states[i].push_back(static_cast<ToolId>(b + 1));
    }
    if (i > 0) best = static_cast<std::size_t>(from[i][best]);
  }
  result.sequence = MagazineSequence::from_sets(states, cap);
  return result;
}

/// Maximum pipe count over all full sequences, obtained from the exact
/// optimum and cross-checked against the pipes of the DP's argmin sequence.
inline std::int64_t exact_max_pipes(const Instance& inst,
                                    std::int64_t budget = kDefaultOracleBudget) {
  const ExactResult exact = exact_min_switches(inst, budget);
  const std::int64_t pipes = switches_from_pipes(inst, exact.min_switches);
  const auto realized =
      static_cast<std::int64_t>(enumerate_pipes(exact.sequence, inst).size());
  if (realized != pipes) {
    throw Error(ErrorKind::InternalInvariant,
                "optimal sequence carries " + std::to_string(realized) +
                    " pipes, expected " + std::to_string(pipes));
  }
  return pipes;
}

enum class PathClass { Pipe, H1Pre, H1Post, H0 };

inline const char* to_string(PathClass c) {
  switch (c) {
    case PathClass::Pipe: return "pipe";
    case PathClass::H1Pre: return "h1_pre";
    case PathClass::H1Post: return "h1_post";
    case PathClass::H0: return "h0";
  }
  return "?";
}

/// A maximal run of tool `tool` over moments start..end.
struct KeptPath {
  ToolId tool = 0;
  Moment start = 0;
  Moment end = 0;
  PathClass kind = PathClass::H0;

  std::int64_t arcs() const { return end - start; }
  friend auto operator<=>(const KeptPath&, const KeptPath&) = default;
};

/// Extends the useless vertex (k, t) left and right while the tool stays
/// loaded, stopping at the first moment on each side that uses the tool.
inline KeptPath find_path(const Occupancy& occ, Moment k, ToolId t) {
  if (!occ.loaded(k, t) || occ.needed(k, t)) {
    throw Error(ErrorKind::NotUseless,
                "tool " + std::to_string(t) + " at moment " + std::to_string(k) +
                    " is not a useless vertex",
                k);
  }
  Moment s = k;
  while (occ.loaded(s - 1, t)) {
    --s;
    if (occ.needed(s, t)) break;
  }
  Moment e = k;
  while (occ.loaded(e + 1, t)) {
    ++e;
    if (occ.needed(e, t)) break;
  }
  const bool used_start = occ.needed(s, t);
  const bool used_end = occ.needed(e, t);
  PathClass kind = PathClass::H0;
  if (used_start && used_end) {
    kind = PathClass::Pipe;
  } else if (used_start) {
    kind = PathClass::H1Post;
  } else if (used_end) {
    kind = PathClass::H1Pre;
  }
  return {t, s, e, kind};
}

inline KeptPath find_path(const MagazineSequence& seq, const Instance& inst,
                          Moment k, ToolId t) {
  return find_path(Occupancy(seq, inst), k, t);
}

struct PathDecomposition {
  std::vector<Pipe> pipes;
  std::vector<KeptPath> h1_pre;
  std::vector<KeptPath> h1_post;
  std::vector<KeptPath> h0;

  std::vector<KeptPath> all() const {
    std::vector<KeptPath> out;
    for (const Pipe& p : pipes) out.push_back({p.tool, p.start, p.end, PathClass::Pipe});
    out.insert(out.end(), h1_pre.begin(), h1_pre.end());
    out.insert(out.end(), h1_post.begin(), h1_post.end());
    out.insert(out.end(), h0.begin(), h0.end());
    return out;
  }
};

/// Runs find_path from every useless vertex, removes duplicates, and adds
/// the two-vertex pipes between consecutive uses.
inline PathDecomposition decompose(const MagazineSequence& seq,
                                   const Instance& inst) {
  const Occupancy occ(seq, inst);
  std::set<std::tuple<ToolId, Moment, Moment>> seen;
  PathDecomposition d;
  auto add = [&](const KeptPath& p) {
    if (!seen.emplace(p.tool, p.start, p.end).second) return;
    switch (p.kind) {
      case PathClass::Pipe: d.pipes.push_back({p.start, p.end, p.tool}); break;
      case PathClass::H1Pre: d.h1_pre.push_back(p); break;
      case PathClass::H1Post: d.h1_post.push_back(p); break;
      case PathClass::H0: d.h0.push_back(p); break;
    }
  };
  for (Moment k = 1; k <= inst.n(); ++k) {
    for (ToolId t : seq.state(k)) {
      if (!occ.needed(k, t)) add(find_path(occ, k, t));
    }
    if (k < inst.n()) {
      for (ToolId t : inst.tools(k)) {
        if (occ.needed(k + 1, t)) add({t, k, k + 1, PathClass::Pipe});
      }
    }
  }
  std::sort(d.pipes.begin(), d.pipes.end());
  std::sort(d.h1_pre.begin(), d.h1_pre.end());
  std::sort(d.h1_post.begin(), d.h1_post.end());
  std::sort(d.h0.begin(), d.h0.end());
  return d;
}

/// Arcs of the kept-tool graph: sum over i of |L_i ∩ L_{i+1}|.
inline std::int64_t count_arcs(const MagazineSequence& seq) {
  std::vector<Moment> stamp(static_cast<std::size_t>(seq.max_tool()) + 1, 0);
  std::int64_t arcs = 0;
  for (Moment i = 1; i < seq.moments(); ++i) {
    for (ToolId t : seq.state(i)) stamp[static_cast<std::size_t>(t)] = i;
    for (ToolId t : seq.state(i + 1)) {
      if (stamp[static_cast<std::size_t>(t)] == i) ++arcs;
    }
  }
  return arcs;
}

inline std::int64_t count_useless(const MagazineSequence& seq,
                                  const Instance& inst) {
  std::int64_t total = 0;
  for (Moment i = 1; i <= inst.n(); ++i) {
    total += seq.state_size(i) - static_cast<std::int64_t>(inst.tools(i).size());
  }
  return total;
}

struct DecompositionCheck {
  bool classes_valid = true;   // every path satisfies its class definition
  bool partition = true;       // useless vertices covered exactly once
  bool arc_identity = true;    // |A| = sum of path arcs
  std::int64_t useless_vertices = 0;
  std::int64_t arc_count = 0;
  std::int64_t path_arcs = 0;

  bool ok() const { return classes_valid && partition && arc_identity; }
};

/// Verifies the disjoint-union and arc-count properties of a decomposition.
inline DecompositionCheck check_decomposition(const MagazineSequence& seq,
                                              const Instance& inst,
                                              const PathDecomposition& d) {
  const Occupancy occ(seq, inst);
  const int n = inst.n();
  const auto width = static_cast<std::size_t>(occ.max_tool()) + 1;
  std::vector<int> cover(static_cast<std::size_t>(n + 1) * width, 0);
  DecompositionCheck r;

  for (const KeptPath& p : d.all()) {
    const ToolId t = p.tool;
    if (p.start < 1 || p.end > n || p.start > p.end) {
      r.classes_valid = false;
      continue;
    }
    for (Moment i = p.start; i <= p.end; ++i) {
      if (!occ.loaded(i, t)) r.classes_valid = false;
      if (i > p.start && i < p.end && occ.needed(i, t)) r.classes_valid = false;
      if (occ.useless(i, t)) ++cover[static_cast<std::size_t>(i) * width + static_cast<std::size_t>(t)];
    }
    const bool used_s = occ.needed(p.start, t);
    const bool used_e = occ.needed(p.end, t);
    const bool open_left = !occ.loaded(p.start - 1, t);
    const bool open_right = !occ.loaded(p.end + 1, t);
    bool valid = false;
    switch (p.kind) {
      case PathClass::Pipe: valid = used_s && used_e && p.start < p.end; break;
      case PathClass::H1Post: valid = used_s && !used_e && open_right; break;
      case PathClass::H1Pre: valid = !used_s && used_e && open_left; break;
      case PathClass::H0: valid = !used_s && !used_e && open_left && open_right; break;
    }
    if (!valid) r.classes_valid = false;
    r.path_arcs += p.arcs();
  }

  for (Moment i = 1; i <= n; ++i) {
    for (ToolId t : seq.state(i)) {
      const int c = cover[static_cast<std::size_t>(i) * width + static_cast<std::size_t>(t)];
      if (occ.useless(i, t)) {
        ++r.useless_vertices;
        if (c != 1) r.partition = false;
      }
    }
  }
  r.arc_count = count_arcs(seq);
  r.arc_identity = r.arc_count == r.path_arcs;
  return r;
}

}  // namespace tlp
