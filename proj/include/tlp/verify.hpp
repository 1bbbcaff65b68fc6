#pragma once

// Cross-checks every solver on one instance: GPCA (fast and naive), KTNS,
// the exact DP, the ToFullMag contract, and the path decomposition of both
// the partial and the completed sequence.

#include <cstdint>
#include <optional>
#include <string>

#include "tlp/core.hpp"
#include "tlp/gpca.hpp"
#include "tlp/ktns.hpp"
#include "tlp/oracle.hpp"
#include "tlp/tofullmag.hpp"

namespace tlp {

struct Violation {
  std::string property;
  std::string detail;
};

inline std::optional<Violation> verify_instance(
    const Instance& inst, std::int64_t budget = kDefaultOracleBudget) {
  auto fail = [](std::string property, std::string detail) {
    return std::optional<Violation>(Violation{std::move(property), std::move(detail)});
  };

  const GpcaResult fast = gpca_fast(inst);
  const GpcaResult naive = gpca_naive(inst);
  if (fast.pipes_count != naive.pipes_count) {
    return fail("gpca_fast == gpca_naive",
                std::to_string(fast.pipes_count) + " vs " +
                    std::to_string(naive.pipes_count));
  }
  if (fast.stats.insertions >
      static_cast<std::int64_t>(inst.effective_capacity()) * inst.n()) {
    return fail("insertions <= C*n", std::to_string(fast.stats.insertions));
  }

  const std::int64_t gpca_obj = switches_from_pipes(inst, fast.pipes_count);
  const SolveResult kt = ktns_solve(inst);
  const ExactResult exact = exact_min_switches(inst, budget);
  if (gpca_obj != kt.min_switches || gpca_obj != exact.min_switches) {
    return fail("gpca == ktns == oracle",
                "gpca=" + std::to_string(gpca_obj) + " ktns=" +
                    std::to_string(kt.min_switches) + " oracle=" +
                    std::to_string(exact.min_switches));
  }
  const std::int64_t max_pipes = exact_max_pipes(inst, budget);
  if (max_pipes != fast.pipes_count) {
    return fail("gpca pipes == max pipes",
                std::to_string(fast.pipes_count) + " vs " + std::to_string(max_pipes));
  }

  const MagazineSequence full = to_full_mag(fast.states, inst);
  if (!full.full() || full.capacity() != inst.effective_capacity()) {
    return fail("tofullmag full", "a state has an empty slot");
  }
  for (Moment i = 1; i <= inst.n(); ++i) {
    for (ToolId t : fast.states.state(i)) {
      if (!full.contains(i, t)) {
        return fail("tofullmag superset", "moment " + std::to_string(i));
      }
    }
  }
  if (switches(full) != gpca_obj) {
    return fail("tofullmag switches",
                std::to_string(switches(full)) + " vs " + std::to_string(gpca_obj));
  }

  for (const MagazineSequence* seq : {&fast.states, &full}) {
    const PathDecomposition d = decompose(*seq, inst);
    const DecompositionCheck c = check_decomposition(*seq, inst, d);
    if (!c.ok()) {
      return fail("decomposition",
                  std::string(c.partition ? "" : "partition ") +
                      (c.arc_identity ? "" : "arcs ") +
                      (c.classes_valid ? "" : "classes"));
    }
    if (!d.h0.empty()) {
      return fail("no h0 paths", std::to_string(d.h0.size()) + " found");
    }
    if (static_cast<std::int64_t>(d.pipes.size()) <
        static_cast<std::int64_t>(enumerate_pipes(fast.states, inst).size())) {
      return fail("pipe preservation", "fewer pipes after completion");
    }
  }
  return std::nullopt;
}

}  // namespace tlp
