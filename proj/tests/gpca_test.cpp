#include "tlp/gpca.hpp"

#include <random>

#include "gtest/gtest.h"
#include "support.hpp"
#include "tlp/oracle.hpp"

namespace tlp {
namespace {

using testing::example1;

std::vector<Pipe> example2_pipes() {
  return {{1, 2, 2}, {1, 4, 1}, {3, 4, 4}, {3, 4, 6}, {4, 5, 4}, {4, 5, 6}};
}

TEST(GpcaNaive, ExampleOneBuildsSixPipes) {
  const GpcaResult r = gpca_naive(example1());
  EXPECT_EQ(r.pipes_count, 6);
  auto pipes = r.pipes;
  std::sort(pipes.begin(), pipes.end());
  auto expected = example2_pipes();
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(pipes, expected);
}

TEST(GpcaFast, ExampleOneWalkthrough) {
  const Instance inst = example1();
  const GpcaResult r = gpca_fast(inst);
  EXPECT_EQ(r.pipes_count, 6);
  // Built in ascending end moment, tools of T_e in ascending order.
  EXPECT_EQ(r.pipes, example2_pipes());
  // The pipe (2,5) for tool 3 is rejected: moment 3 is full.
  EXPECT_EQ(r.states.sorted_states(),
            (testing::Sets{{1, 2}, {1, 2, 3}, {1, 4, 5, 6}, {1, 4, 6, 7}, {3, 4, 6}}));
  EXPECT_EQ(r.stats.insertions, 2);
}

TEST(GpcaFast, SingleJob) {
  const Instance inst = make_instance(3, {{1, 2}});
  const GpcaResult r = gpca_fast(inst);
  EXPECT_EQ(r.pipes_count, 0);
  EXPECT_EQ(r.states.sorted_states(), (testing::Sets{{1, 2}}));
  EXPECT_EQ(gpca_naive(inst).pipes_count, 0);
}

TEST(GpcaFast, DisjointToolSetsBuildNothing) {
  const Instance inst = make_instance(3, {{1, 2}, {3}, {4, 5, 6}, {7, 8}});
  EXPECT_EQ(gpca_fast(inst).pipes_count, 0);
}

TEST(GpcaFast, CountOnlyModeAgrees) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = testing::random_small_instance(rng, true);
    const GpcaResult full = gpca_fast(inst);
    const GpcaResult lean = gpca_fast(inst, {.keep_states = false, .keep_pipes = false});
    EXPECT_EQ(full.pipes_count, lean.pipes_count);
    EXPECT_EQ(full.stats.insertions, lean.stats.insertions);
    EXPECT_TRUE(lean.pipes.empty());
    EXPECT_EQ(lean.states.moments(), 0);
  }
}

TEST(GpcaFast, MatchesNaiveUnderRandomCandidateOrders) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance inst = testing::random_small_instance(rng, true);
    const std::int64_t fast = gpca_fast(inst).pipes_count;
    EXPECT_EQ(gpca_naive(inst).pipes_count, fast);
    for (std::uint64_t order = 0; order < 10; ++order) {
      ASSERT_EQ(gpca_naive_shuffled(inst, rng()).pipes_count, fast)
          << write_canonical(inst);
    }
  }
}

TEST(GpcaFast, ConstructionInvariants) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    GeneratorConfig cfg{static_cast<int>(uniform_int(rng, 1, 60)), 30, 8, 1, 8, rng()};
    const Instance inst = generate(cfg);
    const GpcaResult r = gpca_fast(inst);
    const int cap = inst.effective_capacity();
    EXPECT_EQ(static_cast<std::int64_t>(r.pipes.size()), r.pipes_count);
    EXPECT_LE(r.stats.insertions, static_cast<std::int64_t>(cap) * inst.n());
    EXPECT_EQ(r.stats.last_full_regressions, 0);
    const Occupancy occ(r.states, inst);
    for (const Pipe& p : r.pipes) {
      ASSERT_LT(p.start, p.end);
      EXPECT_TRUE(occ.needed(p.start, p.tool));
      EXPECT_TRUE(occ.needed(p.end, p.tool));
      for (Moment i = p.start + 1; i < p.end; ++i) {
        EXPECT_FALSE(occ.needed(i, p.tool));
        EXPECT_TRUE(occ.loaded(i, p.tool));
      }
    }
    for (Moment i = 1; i <= inst.n(); ++i) {
      EXPECT_LE(r.states.state_size(i), cap);
    }
    // Every state tool is distinct.
    for (Moment i = 1; i <= inst.n(); ++i) {
      auto s = r.states.sorted_state(i);
      EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    }
  }
}

TEST(Solve, ExampleOne) {
  const SolveResult r = solve(example1());
  EXPECT_EQ(r.pipes_count, 6);
  EXPECT_EQ(r.min_switches, 4);
  EXPECT_EQ(r.min_switches, 14 - 4 - 6);
  EXPECT_EQ(switches(r.sequence), 4);
  EXPECT_EQ(r.sequence.sorted_states(), testing::example1_states());
}

TEST(Solve, SingleJob) {
  EXPECT_EQ(solve(make_instance(2, {{1, 2}})).min_switches, 0);
}

TEST(Solve, MatchesExactOracle) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance inst = testing::random_small_instance(rng, true);
    const SolveResult r = solve(inst);
    ASSERT_EQ(r.min_switches, exact_min_switches(inst).min_switches)
        << write_canonical(inst);
    EXPECT_TRUE(r.sequence.full());
  }
}

TEST(Solve, FewerToolsThanSlots) {
  // m = 3 < C = 5: everything fits, nothing is ever switched.
  const Instance inst = make_instance(5, {{1}, {2, 3}, {1}, {3}});
  const SolveResult r = solve(inst);
  EXPECT_EQ(r.min_switches, 0);
  EXPECT_EQ(r.sequence.capacity(), 3);
  for (Moment i = 1; i <= inst.n(); ++i) {
    EXPECT_EQ(r.sequence.sorted_state(i), (std::vector<ToolId>{1, 2, 3}));
  }
}

}  // namespace
}  // namespace tlp
