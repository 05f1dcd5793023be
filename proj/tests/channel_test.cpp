#include "mmrelay/channel.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace mmrelay {
namespace {

using test::near_rel;

// Frozen expected values, computed independently with 30-digit arithmetic
// from the same closed forms.
constexpr double kN0Watts = 8.18464788134789839e-8;
constexpr double kPrx100Los = 6.36971472885595601e-4;
constexpr double kPrx500Nlos = 5.39655199562982190e-10;
constexpr double kSnr100Los = 7782.51529106338540;
constexpr double kSnr500Nlos = 6.59350539432257697e-3;
constexpr double kRate100Los = 1.29262061555015245e10;
constexpr double kRate500Nlos = 9.48119461680445153e6;

TEST(DbmToWatts, Definition) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(0.0), 1e-3);
  EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-12);
  EXPECT_TRUE(near_rel(dbm_to_watts(-40.87), kN0Watts, 1e-12));
}

TEST(ReceivedPower, UnitDistanceLos) {
  const ChannelParams p;
  EXPECT_DOUBLE_EQ(received_power(1.0, true, p), 16.0);
}

TEST(ReceivedPower, FrozenValues) {
  const ChannelParams p;
  EXPECT_TRUE(near_rel(received_power(100.0, true, p), kPrx100Los, 1e-12));
  EXPECT_TRUE(near_rel(received_power(500.0, false, p), kPrx500Nlos, 1e-12));
}

TEST(ReceivedPower, BelowClampIsDomainError) {
  const ChannelParams p;
  EXPECT_THROW(received_power(0.5, true, p), std::domain_error);
  EXPECT_THROW(received_power(0.0, false, p), std::domain_error);
}

TEST(Snr, RatioDefinition) {
  ChannelParams p;
  p.n0 = received_power(250.0, true, p);
  EXPECT_DOUBLE_EQ(snr(250.0, true, p), 1.0);
}

TEST(Snr, FrozenValues) {
  const ChannelParams p;
  EXPECT_TRUE(near_rel(snr(100.0, true, p), kSnr100Los, 1e-12));
  EXPECT_TRUE(near_rel(snr(500.0, false, p), kSnr500Nlos, 1e-12));
}

TEST(Snr, DecaysTowardZero) {
  const ChannelParams p;
  EXPECT_LT(snr(1e6, false, p), 1e-12);
  EXPECT_GT(snr(1e6, false, p), 0.0);
}

TEST(LinkRate, UnitSnrGivesBandwidth) {
  ChannelParams p;
  p.n0 = 16.0;  // SNR(1 m, LOS) == 1
  EXPECT_DOUBLE_EQ(link_rate(1.0, true, p), p.w);
}

TEST(LinkRate, FrozenValues) {
  const ChannelParams p;
  EXPECT_TRUE(near_rel(link_rate(100.0, true, p), kRate100Los, 1e-12));
  EXPECT_TRUE(near_rel(link_rate(500.0, false, p), kRate500Nlos, 1e-12));
}

TEST(LinkRate, StrictlyDecreasingInDistance) {
  const ChannelParams p;
  for (const bool los : {true, false}) {
    double previous = link_rate(1.0, los, p);
    for (double d = 2.0; d <= 2000.0; d += 7.5) {
      const double r = link_rate(d, los, p);
      EXPECT_LT(r, previous) << "d = " << d << ", los = " << los;
      EXPECT_GT(r, 0.0);
      previous = r;
    }
  }
}

TEST(LinkRate, LosDominatesNlos) {
  const ChannelParams p;
  for (double d = 1.0; d <= 2000.0; d += 13.0) {
    EXPECT_GE(link_rate(d, true, p), link_rate(d, false, p)) << "d = " << d;
  }
}

// Independent route to the same rates: long-double exp/log instead of pow.
TEST(LinkRate, AgreesWithExpLogRoute) {
  const ChannelParams p;
  for (double d = 2.0; d <= 1500.0; d *= 1.7) {
    for (const bool los : {true, false}) {
      const long double alpha = los ? p.alpha_los : p.alpha_nlos;
      const long double prx = 16.0L * std::exp(-alpha * std::log(static_cast<long double>(d)));
      const long double rate =
          static_cast<long double>(p.w) *
          (std::log1p(prx / static_cast<long double>(p.n0)) / std::log(2.0L));
      EXPECT_TRUE(near_rel(link_rate(d, los, p), static_cast<double>(rate), 1e-12))
          << "d = " << d << ", los = " << los;
    }
  }
}

// Single-link transfer times for a 1 Gb file stay in the tens-of-seconds
// band at ranges of a few hundred meters.
TEST(LinkRate, SingleLinkDelayBand) {
  const ChannelParams p;
  const double file_bits = 1e9;
  for (double d = 100.0; d <= 500.0; d += 50.0) {
    for (const bool los : {true, false}) {
      const double delay = file_bits / link_rate(d, los, p);
      EXPECT_GE(delay, 0.01) << "d = " << d << ", los = " << los;
      EXPECT_LE(delay, 200.0) << "d = " << d << ", los = " << los;
    }
  }
}

TEST(Validate, RejectsBadParameters) {
  ChannelParams p;
  p.w = 0.0;
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = ChannelParams{};
  p.n0 = -1.0;
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = ChannelParams{};
  p.alpha_nlos = 1.0;  // below alpha_los
  EXPECT_THROW(validate(p), std::invalid_argument);
  EXPECT_NO_THROW(validate(ChannelParams{}));
}

}  // namespace
}  // namespace mmrelay
