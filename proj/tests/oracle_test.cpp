#include "tlp/oracle.hpp"

#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "support.hpp"
#include "tlp/gpca.hpp"

namespace tlp {
namespace {

TEST(ExactMinSwitches, ExampleOne) {
  const ExactResult r = exact_min_switches(testing::example1());
  EXPECT_EQ(r.min_switches, 4);
  EXPECT_TRUE(r.sequence.full());
  EXPECT_EQ(switches(r.sequence), 4);
}

TEST(ExactMinSwitches, SingleJob) {
  EXPECT_EQ(exact_min_switches(make_instance(3, {{1, 2, 3}})).min_switches, 0);
}

TEST(ExactMinSwitches, MatchesMemoFreeSearch) {
  std::mt19937_64 rng(51);
  int checked = 0;
  while (checked < 300) {
    const Instance inst = testing::random_small_instance(rng, true);
    if (inst.n() > 4) continue;
    ASSERT_EQ(exact_min_switches(inst).min_switches,
              testing::recursive_min_switches(inst))
        << write_canonical(inst);
    ++checked;
  }
}

TEST(ExactMinSwitches, BudgetIsEnforced) {
  GeneratorConfig cfg{40, 30, 15, 1, 15, 7};
  try {
    exact_min_switches(generate(cfg), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(ExactMinSwitches, InvariantUnderToolRelabeling) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = testing::random_small_instance(rng);
    std::vector<ToolId> relabel(static_cast<std::size_t>(inst.m()) + 1);
    std::iota(relabel.begin(), relabel.end(), 0);
    for (std::size_t k = relabel.size() - 1; k > 1; --k) {
      std::swap(relabel[k], relabel[1 + uniform_below(rng, k)]);
    }
    std::vector<std::vector<ToolId>> sets;
    for (const auto& s : inst.tool_sets()) {
      std::vector<ToolId> r;
      for (ToolId t : s) r.push_back(relabel[static_cast<std::size_t>(t)]);
      sets.push_back(r);
    }
    const Instance moved = make_instance(inst.capacity(), sets);
    EXPECT_EQ(exact_min_switches(moved).min_switches,
              exact_min_switches(inst).min_switches);
  }
}

TEST(ExactMaxPipes, ExampleOneAndDisjoint) {
  EXPECT_EQ(exact_max_pipes(testing::example1()), 6);
  EXPECT_EQ(exact_max_pipes(make_instance(2, {{1, 2}, {3}, {4, 5}})), 0);
}

TEST(ExactMaxPipes, EqualsGpcaCount) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = testing::random_small_instance(rng, true);
    ASSERT_EQ(exact_max_pipes(inst), gpca_fast(inst).pipes_count) << write_canonical(inst);
  }
}

TEST(FindPath, WorkedExampleToolOne) {
  const Instance inst = testing::example1();
  const auto seq = MagazineSequence::from_sets(testing::example1_states(), 4);
  const KeptPath p = find_path(seq, inst, 2, 1);
  EXPECT_EQ(p.tool, 1);
  EXPECT_EQ(p.start, 1);
  EXPECT_EQ(p.end, 4);
  EXPECT_EQ(p.kind, PathClass::Pipe);

  // Tool 4 is loaded at 1 and 2 ahead of its first use at 3.
  const KeptPath pre = find_path(seq, inst, 1, 4);
  EXPECT_EQ(pre.start, 1);
  EXPECT_EQ(pre.end, 3);
  EXPECT_EQ(pre.kind, PathClass::H1Pre);

  // Tool 1 at moment 5 is kept after its last use.
  const KeptPath post = find_path(seq, inst, 5, 1);
  EXPECT_EQ(post.start, 4);
  EXPECT_EQ(post.end, 5);
  EXPECT_EQ(post.kind, PathClass::H1Post);
}

TEST(FindPath, IsolatedUselessVertexIsH0) {
  const Instance inst = make_instance(2, {{1}, {2}, {1}});
  const auto seq = MagazineSequence::from_sets({{1}, {2, 3}, {1}}, 2);
  const KeptPath p = find_path(seq, inst, 2, 3);
  EXPECT_EQ(p.start, 2);
  EXPECT_EQ(p.end, 2);
  EXPECT_EQ(p.kind, PathClass::H0);
}

TEST(FindPath, DoesNotJumpOverGaps) {
  // Tool 3 is loaded at 1 and 3 but not at 2: the run from 3 stays at 3.
  const Instance inst = make_instance(2, {{1}, {2}, {1}, {3}});
  const auto seq = MagazineSequence::from_sets({{1, 3}, {2}, {1, 3}, {3}}, 2);
  const KeptPath p = find_path(seq, inst, 3, 3);
  EXPECT_EQ(p.start, 3);
  EXPECT_EQ(p.end, 4);
  EXPECT_EQ(p.kind, PathClass::H1Pre);
}

TEST(FindPath, RejectsUsedOrAbsentTools) {
  const Instance inst = testing::example1();
  const auto seq = MagazineSequence::from_sets(testing::example1_states(), 4);
  for (auto [k, t] : {std::pair{1, 1}, std::pair{3, 2}}) {
    try {
      find_path(seq, inst, k, t);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotUseless);
    }
  }
}

TEST(FindPath, SameRunFromEveryUselessVertex) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = testing::random_small_instance(rng, true);
    const auto states = testing::random_feasible_states(rng, inst, trial % 2 == 0);
    const auto seq = MagazineSequence::from_sets(states, inst.effective_capacity());
    const Occupancy occ(seq, inst);
    for (Moment k = 1; k <= inst.n(); ++k) {
      for (ToolId t : seq.state(k)) {
        if (occ.needed(k, t)) continue;
        const KeptPath p = find_path(occ, k, t);
        for (Moment j = p.start; j <= p.end; ++j) {
          if (occ.useless(j, t)) EXPECT_EQ(find_path(occ, j, t), p);
        }
      }
    }
  }
}

TEST(Decompose, WorkedExample) {
  const Instance inst = testing::example1();
  const auto seq = MagazineSequence::from_sets(testing::example1_states(), 4);
  const PathDecomposition d = decompose(seq, inst);
  EXPECT_EQ(d.pipes, enumerate_pipes(seq, inst));
  EXPECT_EQ(d.pipes.size(), 6u);
  EXPECT_TRUE(d.h0.empty());
  EXPECT_TRUE(check_decomposition(seq, inst, d).ok());
}

TEST(Decompose, BareRequirementsHaveOnlyConsecutivePipes) {
  const Instance inst = testing::example1();
  const auto seq = MagazineSequence::from_instance(inst, 4);
  const PathDecomposition d = decompose(seq, inst);
  EXPECT_TRUE(d.h0.empty());
  EXPECT_TRUE(d.h1_pre.empty());
  EXPECT_TRUE(d.h1_post.empty());
  EXPECT_EQ(d.pipes, (std::vector<Pipe>{{1, 2, 2}, {3, 4, 4}, {3, 4, 6}, {4, 5, 4}, {4, 5, 6}}));
  const auto check = check_decomposition(seq, inst, d);
  EXPECT_EQ(check.useless_vertices, 0);
  EXPECT_TRUE(check.ok());
}

TEST(Decompose, PartitionArcsAndSwitchIdentity) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 1000; ++trial) {
    const Instance inst = testing::random_small_instance(rng, true);
    const bool full = trial % 2 == 0;
    const auto states = testing::random_feasible_states(rng, inst, full);
    const auto seq = MagazineSequence::from_sets(states, inst.effective_capacity());
    const PathDecomposition d = decompose(seq, inst);
    const DecompositionCheck c = check_decomposition(seq, inst, d);
    ASSERT_TRUE(c.partition) << write_canonical(inst);
    ASSERT_TRUE(c.arc_identity);
    ASSERT_TRUE(c.classes_valid);
    EXPECT_EQ(c.useless_vertices, count_useless(seq, inst));
    EXPECT_EQ(d.pipes, enumerate_pipes(seq, inst));
    if (full) {
      EXPECT_EQ(switches(seq),
                inst.total_demand() - inst.effective_capacity() -
                    static_cast<std::int64_t>(d.pipes.size()) +
                    static_cast<std::int64_t>(d.h0.size()));
    }
  }
}

TEST(Decompose, DetectsBrokenPartition) {
  const Instance inst = testing::example1();
  const auto seq = MagazineSequence::from_sets(testing::example1_states(), 4);
  PathDecomposition d = decompose(seq, inst);
  d.h1_pre.push_back(d.h1_pre.front());
  EXPECT_FALSE(check_decomposition(seq, inst, d).partition);
  EXPECT_FALSE(check_decomposition(seq, inst, d).arc_identity);
}

}  // namespace
}  // namespace tlp
