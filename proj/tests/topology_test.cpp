#include "mmrelay/topology.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace mmrelay {
namespace {

using test::near_rel;

TEST(LosProbability, Values) {
  EXPECT_DOUBLE_EQ(los_probability(0.0, 0.25), 1.0);
  EXPECT_TRUE(near_rel(los_probability(141.4, 1.0 / 141.4), 0.367879441171442321, 1e-12));
  const double far = los_probability(1e7, 1.0 / 141.4);
  EXPECT_LT(far, 1e-12);
  EXPECT_GT(far, 0.0);
}

TEST(LosProbability, RejectsBadInputs) {
  EXPECT_THROW(los_probability(-1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(los_probability(10.0, 0.0), std::invalid_argument);
  EXPECT_THROW(los_probability(10.0, -0.1), std::invalid_argument);
}

TEST(GenerateInstance, LayoutAndCounts) {
  const Instance inst = test::random_instance(42, 3, 10);
  ASSERT_EQ(inst.node_count(), 16);
  ASSERT_EQ(static_cast<int>(inst.nodes.size()), 16);
  for (int id = 0; id < 16; ++id) {
    EXPECT_EQ(inst.nodes[id].id, id);
    if (id < 3) {
      EXPECT_EQ(inst.nodes[id].role, NodeRole::source);
      EXPECT_EQ(inst.nodes[id].pair, id);
    } else if (id < 6) {
      EXPECT_EQ(inst.nodes[id].role, NodeRole::destination);
      EXPECT_EQ(inst.nodes[id].pair, id - 3);
    } else {
      EXPECT_EQ(inst.nodes[id].role, NodeRole::relay);
      EXPECT_EQ(inst.nodes[id].pair, -1);
    }
  }
}

TEST(GenerateInstance, DirectLinksForcedNlos) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = test::random_instance(seed, 3, 10);
    for (int i = 0; i < inst.m; ++i) {
      EXPECT_FALSE(inst.los(inst.source(i), inst.destination(i))) << "seed " << seed;
    }
  }
}

TEST(GenerateInstance, LosSymmetric) {
  const Instance inst = test::random_instance(7, 4, 12);
  for (int a = 0; a < inst.node_count(); ++a) {
    for (int b = 0; b < inst.node_count(); ++b) {
      if (a == b) continue;
      EXPECT_EQ(inst.los(a, b), inst.los(b, a));
    }
  }
}

TEST(GenerateInstance, CoordinatesInsideArea) {
  const Instance inst = test::random_instance(11, 2, 30);
  for (const Node& node : inst.nodes) {
    EXPECT_GE(node.x, 0.0);
    EXPECT_LT(node.x, inst.area.width);
    EXPECT_GE(node.y, 0.0);
    EXPECT_LT(node.y, inst.area.height);
  }
}

TEST(GenerateInstance, Deterministic) {
  const Instance a = test::random_instance(123456, 3, 10);
  const Instance b = test::random_instance(123456, 3, 10);
  EXPECT_EQ(a, b);
  const Instance c = test::random_instance(123457, 3, 10);
  EXPECT_NE(a, c);
}

TEST(GenerateInstance, TwoNodeInstanceHasOneNlosLink) {
  const Instance inst = test::random_instance(99, 1, 0);
  ASSERT_EQ(inst.node_count(), 2);
  EXPECT_FALSE(inst.los(0, 1));
}

TEST(GenerateInstance, RejectsBadArguments) {
  const ChannelParams p;
  EXPECT_THROW(generate_instance(1, 0, 5, {100, 100}, p, {}, 0.01), std::invalid_argument);
  EXPECT_THROW(generate_instance(1, 1, -1, {100, 100}, p, {1e9}, 0.01), std::invalid_argument);
  EXPECT_THROW(generate_instance(1, 1, 1, {0, 100}, p, {1e9}, 0.01), std::invalid_argument);
  EXPECT_THROW(generate_instance(1, 1, 1, {100, 100}, p, {1e9}, 0.0), std::invalid_argument);
  EXPECT_THROW(generate_instance(1, 2, 1, {100, 100}, p, {1e9}, 0.01), std::invalid_argument);
  EXPECT_THROW(generate_instance(1, 1, 1, {100, 100}, p, {-1.0}, 0.01), std::invalid_argument);
}

TEST(Distance, KnownValues) {
  const Instance inst = test::manual_instance(1, {{0, 0}, {3, 4}, {0, 0.5}, {141.4, 0}}, true);
  EXPECT_DOUBLE_EQ(distance(inst, 0, 1), 5.0);
  EXPECT_DOUBLE_EQ(distance(inst, 0, 2), 1.0);  // clamped
  EXPECT_DOUBLE_EQ(distance(inst, 0, 3), 141.4);
  EXPECT_DOUBLE_EQ(distance(inst, 1, 0), distance(inst, 0, 1));
  EXPECT_THROW(distance(inst, 2, 2), std::domain_error);
}

// The LOS fraction over many draws of the sampling rule at fixed distance
// tracks e^(-beta d) within three standard errors.
TEST(Blockage, EmpiricalRateAtFixedDistance) {
  const double beta = 1.0 / 141.4;
  for (const double d : {50.0, 141.4, 400.0}) {
    const double p = los_probability(d, beta);
    const int draws = 100000;
    Rng rng(2024);
    int hits = 0;
    for (int i = 0; i < draws; ++i) {
      if (uniform01(rng) < p) ++hits;
    }
    const double fraction = static_cast<double>(hits) / draws;
    const double se = std::sqrt(p * (1.0 - p) / draws);
    EXPECT_NEAR(fraction, p, 3.0 * se) << "d = " << d;
  }
}

// Same property through the generator itself: across an instance's sampled
// links, the LOS count matches the sum of the per-link probabilities.
TEST(Blockage, EmpiricalRateAcrossInstanceLinks) {
  const Instance inst = test::random_instance(5, 1, 500);
  double expected = 0.0;
  double variance = 0.0;
  int observed = 0;
  for (int a = 0; a < inst.node_count(); ++a) {
    for (int b = a + 1; b < inst.node_count(); ++b) {
      if (a == 0 && b == 1) continue;  // forced NLOS direct link
      const double p = los_probability(distance(inst, a, b), inst.beta);
      expected += p;
      variance += p * (1.0 - p);
      observed += inst.los(a, b) ? 1 : 0;
    }
  }
  EXPECT_NEAR(observed, expected, 3.0 * std::sqrt(variance));
}

}  // namespace
}  // namespace mmrelay
