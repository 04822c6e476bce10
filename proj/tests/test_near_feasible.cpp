#include <gtest/gtest.h>

#include "nfsm/near_feasible.hpp"
#include "nfsm/random.hpp"
#include "test_support.hpp"

using namespace nfsm;
using nfsm::testing::load;
using nfsm::testing::pairs_1based;

namespace {

void expect_contract(const SfInstance& inst, const NearFeasibleResult& res, RepairMode mode, std::size_t odd) {
  ASSERT_EQ(res.modified.size(), odd);
  EXPECT_EQ(res.delta.total_abs(), static_cast<int>(odd));
  EXPECT_LE(res.delta.max_abs(), 1);
  for (AgentId i = 0; i < inst.size(); ++i) {
    const bool listed = std::find(res.modified.begin(), res.modified.end(), i) != res.modified.end();
    EXPECT_EQ(res.delta[i] != 0, listed) << "agent " << i;
    if (mode == RepairMode::Increase) {
      EXPECT_GE(res.delta[i], 0);
    } else if (mode == RepairMode::Decrease) {
      EXPECT_LE(res.delta[i], 0);
    }
  }
  if (mode == RepairMode::Alternate) {
    // Increases and decreases alternate, so they differ by at most one.
    EXPECT_LE(std::abs(res.delta.signed_sum()), 1);
    EXPECT_GE(res.delta.signed_sum(), 0);
  }
  const SfInstance modified = apply_deltas(inst, res.delta);
  EXPECT_TRUE(nfsm::testing::oracle_feasible(res.matching, modified));
  EXPECT_TRUE(nfsm::testing::oracle_blocking_pairs(res.matching, modified).empty());
}

}  // namespace

TEST(NearFeasible, Triangle5Increase) {
  const SfInstance t2 = load("triangle5.txt");
  const auto res = solve_or_repair(t2, RepairMode::Increase);
  EXPECT_EQ(res.delta[0], 1);
  EXPECT_EQ(res.delta.total_abs(), 1);
  EXPECT_EQ(res.modified, std::vector<AgentId>{0});
  EXPECT_EQ(res.matching, pairs_1based(5, {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 5}}));
  expect_contract(t2, res, RepairMode::Increase, 1);
}

TEST(NearFeasible, Triangle5Decrease) {
  const SfInstance t2 = load("triangle5.txt");
  const auto res = solve_or_repair(t2, RepairMode::Decrease);
  EXPECT_EQ(res.delta[0], -1);
  EXPECT_EQ(res.matching, pairs_1based(5, {{2, 3}, {1, 4}, {2, 4}, {3, 5}}));
  expect_contract(t2, res, RepairMode::Decrease, 1);
}

TEST(NearFeasible, AlternateStartsWithIncrease) {
  const SfInstance t2 = load("triangle5.txt");
  EXPECT_EQ(solve_or_repair(t2, RepairMode::Alternate).delta[0], 1);

  const SfInstance h = hard_family(9);
  const auto res = solve_or_repair(h, RepairMode::Alternate);
  ASSERT_EQ(res.modified.size(), 3u);
  EXPECT_EQ(res.delta[res.modified[0]], 1);
  EXPECT_EQ(res.delta[res.modified[1]], -1);
  EXPECT_EQ(res.delta[res.modified[2]], 1);
  expect_contract(h, res, RepairMode::Alternate, 3);
}

TEST(NearFeasible, SolvableInstanceIsLeftAlone) {
  const SfInstance t1 = load("solvable5.txt");
  const Gsp g = parse_gsp(read_file(nfsm::testing::data_path("solvable5_gsp.txt")), 5);
  for (RepairMode mode : {RepairMode::Alternate, RepairMode::Increase, RepairMode::Decrease}) {
    const auto res = near_feasible(t1, g, mode);
    EXPECT_TRUE(res.delta.is_zero());
    EXPECT_TRUE(res.modified.empty());
    EXPECT_EQ(res.matching, pairs_1based(5, {{1, 2}, {1, 3}, {2, 3}, {4, 5}}));
  }
}

TEST(NearFeasible, CustomSelectorChoosesTheChangedAgent) {
  const SfInstance t2 = load("triangle5.txt");
  const Gsp g = find_reduced_gsp(t2);
  const auto res = near_feasible(t2, g, RepairMode::Increase, [](const std::vector<AgentId>&) { return 2; });
  EXPECT_EQ(res.modified, std::vector<AgentId>{2});
  EXPECT_EQ(res.delta[2], 1);
  expect_contract(t2, res, RepairMode::Increase, 1);

  EXPECT_THROW(near_feasible(t2, g, RepairMode::Increase, [](const std::vector<AgentId>&) { return 3; }),
               ValidationError);
}

TEST(NearFeasible, RejectsForeignPartition) {
  const SfInstance t2 = load("triangle5.txt");
  EXPECT_THROW(near_feasible(t2, Gsp(5, {{0, 1}, {2, 3}, {4}}), RepairMode::Increase), ValidationError);
}

TEST(NearFeasible, ParseRepairMode) {
  EXPECT_EQ(parse_repair_mode("plus"), RepairMode::Increase);
  EXPECT_EQ(parse_repair_mode("decrease"), RepairMode::Decrease);
  EXPECT_EQ(parse_repair_mode("alt"), RepairMode::Alternate);
  EXPECT_THROW(parse_repair_mode("sideways"), ValidationError);
}

class RepairContract : public ::testing::TestWithParam<RepairMode> {};

TEST_P(RepairContract, HoldsOnRandomInstances) {
  const RepairMode mode = GetParam();
  SplitMix64 rng(900 + static_cast<int>(mode));
  int repaired = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(10));
    const int cap = 1 + static_cast<int>(rng.below(std::min(3, n - 1)));
    const SfInstance inst = random_instance(n, cap, rng());
    const Gsp g = find_reduced_gsp(inst);
    const auto res = near_feasible(inst, g, mode);
    expect_contract(inst, res, mode, odd_cycles(g).size());
    if (HasFailure()) {
      ADD_FAILURE() << serialize_instance(inst);
      return;
    }
    repaired += !res.modified.empty();
  }
  EXPECT_GT(repaired, 0);
}

INSTANTIATE_TEST_SUITE_P(Modes, RepairContract,
                         ::testing::Values(RepairMode::Alternate, RepairMode::Increase, RepairMode::Decrease));
