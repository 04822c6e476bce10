#include <gtest/gtest.h>

#include "nfsm/gsp.hpp"
#include "nfsm/random.hpp"
#include "test_support.hpp"

using namespace nfsm;
using nfsm::testing::load;

namespace {

Gsp gsp_1based(int n, std::vector<std::vector<AgentId>> cycles) {
  for (auto& c : cycles) {
    for (auto& a : c) --a;
  }
  return Gsp(n, std::move(cycles));
}

// n = 4, capacity 1, each agent's successor on the ring 0 -> 1 -> 2 -> 3 -> 0
// is its first choice.
SfInstance four_ring() { return SfInstance({{1, 3, 2}, {2, 0, 3}, {3, 1, 0}, {0, 2, 1}}, {1, 1, 1, 1}); }

}  // namespace

TEST(VerifyGsp, ListedPartitionsAreValid) {
  const SfInstance t1 = load("solvable5.txt");
  const Gsp g1 = parse_gsp(read_file(nfsm::testing::data_path("solvable5_gsp.txt")), 5);
  EXPECT_TRUE(verify_gsp(g1, t1).ok()) << verify_gsp(g1, t1).summary();
  EXPECT_TRUE(odd_cycles(g1).empty());

  const SfInstance t2 = load("triangle5.txt");
  const Gsp g2 = parse_gsp(read_file(nfsm::testing::data_path("triangle5_gsp.txt")), 5);
  EXPECT_TRUE(verify_gsp(g2, t2).ok()) << verify_gsp(g2, t2).summary();
  EXPECT_EQ(odd_cycles(g2), (std::vector<std::vector<AgentId>>{{0, 1, 2}}));
}

TEST(VerifyGsp, Solvable5PartitionNeedsItsFixedPoints) {
  // Without (4) and (5), agents 4 and 5 sit in one cycle each but have capacity 2.
  const SfInstance t1 = load("solvable5.txt");
  const GspReport rep = verify_gsp(gsp_1based(5, {{1, 2}, {1, 3}, {2, 3}, {4, 5}}), t1);
  ASSERT_EQ(rep.violations.size(), 2u) << rep.summary();
  EXPECT_EQ(rep.violations[0].condition, "F3");
  EXPECT_EQ(rep.violations[0].agents, std::vector<AgentId>{3});
  EXPECT_EQ(rep.violations[1].agents, std::vector<AgentId>{4});
  EXPECT_EQ(parse_gsp(read_file(nfsm::testing::data_path("solvable5_gsp.txt")), 5).fixed_point_count(), 2u);
}

TEST(VerifyGsp, ReversedTriangleBreaksSuccessorOrder) {
  const SfInstance t2 = load("triangle5.txt");
  const Gsp bad = gsp_1based(5, {{1, 3, 2}, {1, 4}, {2, 4}, {3, 5}});
  const GspReport rep = verify_gsp(bad, t2);
  EXPECT_TRUE(rep.has("F1")) << rep.summary();
}

TEST(VerifyGsp, WrongMembershipCount) {
  const SfInstance t2 = load("triangle5.txt");
  const GspReport rep = verify_gsp(gsp_1based(5, {{1, 2}, {3, 4}, {5}}), t2);
  EXPECT_TRUE(rep.has("F3")) << rep.summary();
}

TEST(VerifyGsp, MutuallyPreferredOutsidersAreReported) {
  // Pair everyone with their last choice in the ring instance: 0 and 1 would rather
  // be together than with their predecessors.
  const SfInstance ring = four_ring();
  const GspReport rep = verify_gsp(Gsp(4, {{0, 2}, {1, 3}}), ring);
  EXPECT_TRUE(rep.has("F2")) << rep.summary();
}

TEST(VerifyGsp, RepeatedAdjacencyIsReported) {
  const SfInstance t1 = load("solvable5.txt");
  const GspReport rep = verify_gsp(gsp_1based(5, {{1, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}), t1);
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(rep.has("F4") || rep.has("cycle")) << rep.summary();
}

TEST(FindGsp, Triangle5MatchesListedPartition) {
  const SfInstance t2 = load("triangle5.txt");
  const Gsp found = find_reduced_gsp(t2);
  EXPECT_EQ(serialize_gsp(found), "( 1 2 3 )\n( 1 4 )\n( 2 4 )\n( 3 5 )\n");
  EXPECT_FALSE(is_solvable(t2));
  EXPECT_EQ(find_stable_matching(t2), std::nullopt);
}

TEST(FindGsp, Solvable5IsSolvable) {
  const SfInstance t1 = load("solvable5.txt");
  const Gsp found = find_reduced_gsp(t1);
  ASSERT_TRUE(verify_gsp(found, t1).ok());
  EXPECT_TRUE(is_solvable(t1));
  const auto m = find_stable_matching(t1);
  ASSERT_TRUE(m.has_value());
  EXPECT_TRUE(nfsm::testing::oracle_blocking_pairs(*m, t1).empty());
  EXPECT_TRUE(nfsm::testing::oracle_feasible(*m, t1));
}

TEST(ReduceGsp, EvenCycleSplitsIntoConsecutivePairs) {
  const SfInstance ring = four_ring();
  const Gsp four(4, {{0, 1, 2, 3}});
  ASSERT_TRUE(verify_gsp(four, ring).ok()) << verify_gsp(four, ring).summary();
  EXPECT_FALSE(four.is_reduced());
  const Gsp reduced = reduce_gsp(four, ring);
  EXPECT_EQ(reduced, Gsp(4, {{0, 1}, {2, 3}}));
  EXPECT_TRUE(reduced.is_reduced());
  EXPECT_TRUE(verify_gsp(reduced, ring).ok());
  EXPECT_EQ(reduce_gsp(four), reduced);
}

TEST(ReduceGsp, CheckedFormRejectsInvalidInput) {
  const SfInstance t2 = load("triangle5.txt");
  EXPECT_THROW(reduce_gsp(gsp_1based(5, {{1, 2}, {3, 4}, {5}}), t2), ValidationError);
}

TEST(StableFromGsp, RejectsOddCycles) {
  const SfInstance t2 = load("triangle5.txt");
  EXPECT_THROW(stable_from_gsp(find_reduced_gsp(t2)), ValidationError);
  const Gsp g1 = parse_gsp(read_file(nfsm::testing::data_path("solvable5_gsp.txt")), 5);
  EXPECT_EQ(stable_from_gsp(g1), nfsm::testing::pairs_1based(5, {{1, 2}, {1, 3}, {2, 3}, {4, 5}}));
}

TEST(GspText, RoundTripAndErrors) {
  const Gsp g(6, {{4, 5, 3}, {0, 1}, {2}});
  EXPECT_EQ(g.cycles().front(), (std::vector<AgentId>{0, 1}));
  EXPECT_EQ(parse_gsp(serialize_gsp(g), 6), g);
  EXPECT_EQ(parse_gsp("(1 2)\n  ( 3 )\n", 3), Gsp(3, {{0, 1}, {2}}));
  EXPECT_THROW(parse_gsp("1 2\n", 3), ParseError);
  EXPECT_THROW(parse_gsp("( 1 4 )\n", 3), ParseError);
  EXPECT_THROW(Gsp(3, {{}}), ValidationError);
}

TEST(FindGsp, HardFamilyHasOneTrianglePerBlock) {
  for (int n : {3, 6, 9, 12}) {
    const SfInstance h = hard_family(n);
    const Gsp g = find_reduced_gsp(h);
    ASSERT_TRUE(verify_gsp(g, h).ok());
    const auto odd = odd_cycles(g);
    ASSERT_EQ(static_cast<int>(odd.size()), n / 3) << "n=" << n;
    for (const auto& c : odd) EXPECT_EQ(c.size(), 3u);
  }
}

TEST(FindGsp, BudgetIsEnforced) {
  GspSearchOptions opt;
  opt.node_budget = 1;
  EXPECT_THROW(find_reduced_gsp(random_instance(30, 3, 11), opt), BudgetExceeded);
}

TEST(FindGsp, RejectsOversizedInstances) {
  EXPECT_THROW(find_reduced_gsp(random_instance(65, 1, 1)), ValidationError);
}

// Randomised checks of the partition search.
TEST(FindGspProperty, ValidReducedAndConsistent) {
  SplitMix64 rng(2024);
  int unsolvable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(12));
    const int cap = 1 + static_cast<int>(rng.below(std::min<std::uint64_t>(3, n - 1)));
    const SfInstance inst = random_instance(n, cap, rng());
    const Gsp g = find_reduced_gsp(inst);
    const GspReport rep = verify_gsp(g, inst);
    ASSERT_TRUE(rep.ok()) << rep.summary() << serialize_instance(inst);
    ASSERT_TRUE(g.is_reduced());

    // Odd cycles are the same in every reduced partition, so any search order agrees.
    const auto odd = odd_cycles(g);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      GspSearchOptions opt;
      opt.seed = seed;
      opt.use_reduction = seed % 2 == 0;
      ASSERT_EQ(odd_cycles(find_reduced_gsp(inst, opt)), odd) << serialize_instance(inst);
    }

    // Proposal reduction never deletes a pair that a partition uses.
    const auto alive = proposal_reduction(inst);
    for (const auto& c : g.cycles()) {
      for (std::size_t k = 0; c.size() >= 2 && k < c.size(); ++k) {
        ASSERT_TRUE(alive[static_cast<std::size_t>(c[k]) * n + c[(k + 1) % c.size()]]);
      }
    }

    if (odd.empty()) {
      const Matching m = stable_from_gsp(g);
      ASSERT_TRUE(nfsm::testing::oracle_feasible(m, inst));
      ASSERT_TRUE(nfsm::testing::oracle_blocking_pairs(m, inst).empty());
    } else {
      ++unsolvable;
    }
  }
  EXPECT_GT(unsolvable, 0);
}

TEST(FindGspProperty, SolvabilityMatchesBruteForce) {
  SplitMix64 rng(77);
  int solvable = 0, unsolvable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(4));  // 3..6 agents, at most 15 pairs
    const int cap = 1 + static_cast<int>(rng.below(std::min(2, n - 1)));
    const SfInstance inst = random_instance(n, cap, rng());
    const bool expected = nfsm::testing::oracle_stable_matching(inst).has_value();
    ASSERT_EQ(is_solvable(inst), expected) << serialize_instance(inst);
    (expected ? solvable : unsolvable)++;
  }
  EXPECT_GT(solvable, 0);
  EXPECT_GT(unsolvable, 0);
}

TEST(ProposalReduction, ZeroCapacityLosesEveryPair) {
  const SfInstance inst({{1, 2}, {0, 2}, {0, 1}}, {1, 1, 0});
  const auto alive = proposal_reduction(inst);
  for (AgentId j = 0; j < 3; ++j) {
    EXPECT_FALSE(alive[2 * 3 + j]);
    EXPECT_FALSE(alive[j * 3 + 2]);
  }
  const Gsp g = find_reduced_gsp(inst);
  EXPECT_TRUE(verify_gsp(g, inst).ok());
  EXPECT_EQ(stable_from_gsp(g), nfsm::testing::pairs_1based(3, {{1, 2}}));
}
