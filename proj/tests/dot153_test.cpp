#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "macthru/dot153.hpp"
#include "macthru/error.hpp"

namespace macthru {
namespace {

constexpr double kHeaderBlock = 0.727 + 7.27 + 3.63 + 0.727;  // 12.354 us

Dot153Question question(double rate, std::uint32_t x, AckPolicy policy) { return {rate, x, policy}; }

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::ParseError;
}

TEST(DataTime, WorkedValues) {
  // 55 Mbps: MPDU 1004 B = 8032 bits, 8032 mod 5 = 2, so 3 stuff bits.
  const auto c55 = dot153::data_time(55, 1000);
  EXPECT_NEAR(c55.total(), kHeaderBlock + 8000.0 / 55 + 32.0 / 55 + 3.0 / 55 + 4.0 / 11, 1e-12);
  EXPECT_NEAR(c55.total(), 158.8085, 0.0001);
  EXPECT_NEAR(c55.stuff, 3.0 / 55, 1e-15);

  const auto c22 = dot153::data_time(22, 1000);
  EXPECT_NEAR(c22.total(), kHeaderBlock + 8000.0 / 22 + 32.0 / 22 + 4.0 / 11, 1e-12);
  EXPECT_NEAR(c22.total(), 377.81, 0.005);
  EXPECT_EQ(c22.stuff, 0.0);

  // FCS-only MPDU: 32 bits, 32 mod 5 = 2.
  const auto c0 = dot153::data_time(55, 0);
  EXPECT_NEAR(c0.total(), kHeaderBlock + 32.0 / 55 + 3.0 / 55 + 4.0 / 11, 1e-12);
  EXPECT_NEAR(c0.total(), 13.354, 0.0005);

  EXPECT_EQ(kind_of([] { dot153::data_time(54, 1000); }), ErrorKind::InvalidRate);
}

TEST(DataTime, TailSymbolsAtBaseRate) {
  EXPECT_DOUBLE_EQ(dot153::data_time(11, 100).tail, 3.0 / 11);
  for (double r : {22.0, 33.0, 44.0, 55.0}) EXPECT_DOUBLE_EQ(dot153::data_time(r, 100).tail, 4.0 / 11);
}

TEST(AckTime, HeaderOnlyFrame) {
  EXPECT_NEAR(dot153::ack_time(), 12.354, 1e-12);
  EXPECT_EQ(kind_of([] { dot153::ack_time(profile(Standard::Dot11a)); }), ErrorKind::NotApplicable);
}

TEST(ImmAck, WorkedValues) {
  const auto a = dot153::throughput(question(55, 1000, AckPolicy::imm()));
  EXPECT_NEAR(a.per_frame_delay_us, a.data_time_us + kHeaderBlock + 20.0, 1e-12);
  EXPECT_NEAR(a.throughput_mbps, 41.85, 0.005);
  EXPECT_NEAR(a.bandwidth_efficiency, 0.761, 0.0005);

  const auto b = dot153::throughput(question(11, 1000, AckPolicy::imm()));
  const double data11 = kHeaderBlock + 8000.0 / 11 + 32.0 / 11 + 3.0 / 11;
  EXPECT_NEAR(b.data_time_us, data11, 1e-12);
  EXPECT_NEAR(b.data_time_us, 742.81, 0.005);
  EXPECT_NEAR(b.throughput_mbps, 8000.0 / (data11 + kHeaderBlock + 20.0), 1e-12);
  EXPECT_NEAR(b.throughput_mbps, 10.32, 0.005);
}

TEST(DlyAck, WorkedValues) {
  const auto a = dot153::throughput(question(55, 1000, AckPolicy::dly(5)));
  const double data = dot153::data_time(55, 1000).total();
  EXPECT_NEAR(a.per_frame_delay_us, (5 * data + kHeaderBlock + 4 * 2.0 + 20.0) / 5, 1e-12);
  EXPECT_NEAR(a.throughput_mbps, 47.94, 0.005);
}

TEST(DlyAck, SingleFrameBurstEqualsImmAck) {
  for (const auto& m : rate_modes(Standard::Dot153)) {
    for (std::uint32_t x : {1u, 100u, 1000u, 2312u}) {
      EXPECT_EQ(dot153::throughput(question(m.rate_mbps, x, AckPolicy::dly(1))).throughput_mbps,
                dot153::throughput(question(m.rate_mbps, x, AckPolicy::imm())).throughput_mbps);
    }
  }
}

TEST(DlyAck, ApproachesNoAckFromBelow) {
  const double limit = 8000.0 / (dot153::data_time(55, 1000).total() + 2.0);
  EXPECT_NEAR(limit, 49.75, 0.005);
  double previous = 0.0;
  for (std::uint32_t n = 1; n <= 4096; n *= 2) {
    const double t = dot153::throughput(question(55, 1000, AckPolicy::dly(n))).throughput_mbps;
    EXPECT_GT(t, previous);
    EXPECT_LT(t, limit);
    previous = t;
  }
  EXPECT_NEAR(previous, limit, 0.01);
}

TEST(DlyAck, ZeroBurstIsInvalid) {
  EXPECT_EQ(kind_of([] { dot153::throughput(question(55, 1000, AckPolicy::dly(0))); }), ErrorKind::InvalidBurst);
}

TEST(NoAck, WorkedValuesAndFlag) {
  const auto a = dot153::throughput(question(55, 1000, AckPolicy::no_ack()));
  EXPECT_NEAR(a.throughput_mbps, 8000.0 / (dot153::data_time(55, 1000).total() + 2.0), 1e-12);
  EXPECT_TRUE(a.model_extension);
  EXPECT_EQ(a.ack_time_us, 0.0);
  EXPECT_FALSE(dot153::throughput(question(55, 1000, AckPolicy::imm())).model_extension);
}

TEST(Policies, MismatchedEntryPointIsRejected) {
  const auto p = profile(Standard::Dot153);
  EXPECT_EQ(kind_of([&] { dot153::throughput_imm(question(55, 1000, AckPolicy::dly(2)), p); }),
            ErrorKind::InvalidMode);
  EXPECT_EQ(kind_of([&] { dot153::throughput(question(55, 0, AckPolicy::imm())); }), ErrorKind::InvalidPayload);
}

TEST(Properties, RandomQuestions) {
  std::mt19937 rng(153u);
  std::uniform_int_distribution<std::uint32_t> payload(1, 4000);
  std::uniform_int_distribution<std::uint32_t> burst(1, 64);
  const double mifs = 2.0;
  for (int i = 0; i < 5000; ++i) {
    const std::uint32_t x = payload(rng);
    const std::uint32_t n = burst(rng);
    for (const auto& m : rate_modes(Standard::Dot153)) {
      const auto comps = dot153::data_time(m.rate_mbps, x);
      if (!m.stuff_eligible) {
        ASSERT_EQ(comps.stuff, 0.0);
      } else {
        ASSERT_LT(comps.stuff, 1.0 / 11.0);
      }
      const auto imm = dot153::throughput(question(m.rate_mbps, x, AckPolicy::imm()));
      const auto dly = dot153::throughput(question(m.rate_mbps, x, AckPolicy::dly(n)));
      const auto dly_next = dot153::throughput(question(m.rate_mbps, x, AckPolicy::dly(n + 1)));
      const auto none = dot153::throughput(question(m.rate_mbps, x, AckPolicy::no_ack()));
      for (const auto* a : {&imm, &dly, &none}) {
        ASSERT_NEAR(a->components.total(), a->data_time_us, 1e-9 * a->data_time_us);
        ASSERT_LT(a->throughput_mbps, m.rate_mbps);
        ASSERT_GT(a->bandwidth_efficiency, 0.0);
        ASSERT_LT(a->bandwidth_efficiency, 1.0);
      }
      ASSERT_LT(dly.throughput_mbps, dly_next.throughput_mbps);
      ASSERT_LT(dly.throughput_mbps, 8.0 * x / (dly.data_time_us + mifs));
      ASSERT_LT(dly.throughput_mbps, none.throughput_mbps);
      ASSERT_LE(imm.throughput_mbps, dly.throughput_mbps);
    }
  }
}

}  // namespace
}  // namespace macthru
