#include <cmath>
#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "macthru/dot11.hpp"
#include "macthru/error.hpp"

namespace macthru {
namespace {

Dot11Question question(Standard s, double rate, std::uint32_t x, AccessMode mode) {
  Dot11Question q;
  q.standard = s;
  q.rate_mbps = rate;
  q.payload_bytes = x;
  q.access_mode = mode;
  return q;
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::ParseError;
}

TEST(Backoff, MeanOfMinimumWindow) {
  EXPECT_DOUBLE_EQ(dot11::backoff_time(profile(Standard::Dot11a)), 15.0 / 2.0 * 9.0);
  EXPECT_DOUBLE_EQ(dot11::backoff_time(profile(Standard::Dot11b)), 31.0 / 2.0 * 20.0);
  EXPECT_EQ(kind_of([] { dot11::backoff_time(profile(Standard::Dot153)); }), ErrorKind::NotApplicable);
}

TEST(DataTime11b, WorkedValues) {
  EXPECT_NEAR(dot11::data_time_11b(11, 1000), 192.0 + 8240.0 / 11.0, 1e-12);
  EXPECT_DOUBLE_EQ(dot11::data_time_11b(1, 0), 432.0);
  EXPECT_NEAR(dot11::data_time_11b(1e12, 1000), 192.0, 1e-6);
  EXPECT_EQ(kind_of([] { dot11::data_time_11b(0, 1000); }), ErrorKind::InvalidRate);
  EXPECT_EQ(kind_of([] { dot11::data_time_11b(-2, 1000); }), ErrorKind::InvalidRate);
}

TEST(DataTime11a, WorkedValues) {
  // ceil(8262 / 216) = 39 and ceil(262 / 24) = 11.
  EXPECT_DOUBLE_EQ(dot11::data_time_11a(54, 1000), 20.0 + 4.0 * 39);
  EXPECT_DOUBLE_EQ(dot11::data_time_11a(6, 0), 20.0 + 4.0 * 11);
  EXPECT_EQ(kind_of([] { dot11::data_time_11a(6.1, 100); }), ErrorKind::InvalidRate);
}

TEST(DataTime11a, OneByteChangesAtMostOneSymbol) {
  for (const auto& m : rate_modes(Standard::Dot11a)) {
    for (std::uint32_t x = 0; x < 2312; ++x) {
      const double step = dot11::data_time_11a(m.rate_mbps, x + 1) - dot11::data_time_11a(m.rate_mbps, x);
      ASSERT_TRUE(step == 0.0 || step == 4.0) << m.rate_mbps << " Mbps, x=" << x;
    }
  }
}

TEST(CycleDelay, WorkedValues) {
  const auto basic = dot11::cycle_delay(question(Standard::Dot11a, 54, 1000, AccessMode::Basic));
  EXPECT_DOUBLE_EQ(basic.total(), 34 + 67.5 + 176 + 16 + 28 + 2);
  EXPECT_EQ(basic.rts, 0.0);
  EXPECT_EQ(basic.cts, 0.0);

  const auto rts = dot11::cycle_delay(question(Standard::Dot11a, 54, 1000, AccessMode::RtsCts));
  EXPECT_DOUBLE_EQ(rts.total(), 34 + 67.5 + 28 + 28 + 176 + 48 + 28 + 2);
  EXPECT_DOUBLE_EQ(rts.sifs_total, 3 * 16.0);

  const auto b = dot11::cycle_delay(question(Standard::Dot11b, 11, 1000, AccessMode::Basic));
  EXPECT_NEAR(b.total(), 50 + 310 + (192 + 8240.0 / 11) + 10 + 248 + 2, 1e-9);
  EXPECT_NEAR(b.total(), 1561.09, 0.005);
}

TEST(MaxThroughput, WorkedValues) {
  const auto basic = dot11::max_throughput(question(Standard::Dot11a, 54, 1000, AccessMode::Basic));
  EXPECT_DOUBLE_EQ(basic.throughput_mbps, 8000.0 / 323.5);
  EXPECT_NEAR(basic.throughput_mbps, 24.73, 0.005);
  EXPECT_NEAR(basic.bandwidth_efficiency, 0.458, 0.0005);

  const auto rts = dot11::max_throughput(question(Standard::Dot11a, 54, 1000, AccessMode::RtsCts));
  EXPECT_DOUBLE_EQ(rts.throughput_mbps, 8000.0 / 411.5);
  EXPECT_NEAR(rts.throughput_mbps, 19.44, 0.005);
}

TEST(MaxThroughput, RejectsInvalidQuestions) {
  auto q = question(Standard::Dot11a, 54, 1000, AccessMode::Basic);
  q.rate_mbps = 100;
  EXPECT_EQ(kind_of([&] { dot11::max_throughput(q); }), ErrorKind::InvalidRate);
  q.allow_hypothetical_rate = true;
  EXPECT_NO_THROW(dot11::max_throughput(q));
  q.rate_mbps = 100.1;  // 400.4 bits per symbol
  EXPECT_EQ(kind_of([&] { dot11::max_throughput(q); }), ErrorKind::InvalidRate);

  q = question(Standard::Dot11a, 54, 0, AccessMode::Basic);
  EXPECT_EQ(kind_of([&] { dot11::max_throughput(q); }), ErrorKind::InvalidPayload);
  q.allow_zero_payload = true;
  EXPECT_EQ(dot11::max_throughput(q).throughput_mbps, 0.0);

  q = question(Standard::Dot11b, 11, 2313, AccessMode::Basic);
  EXPECT_EQ(kind_of([&] { dot11::max_throughput(q); }), ErrorKind::InvalidPayload);
  q.max_payload_bytes = 4000;
  EXPECT_NO_THROW(dot11::max_throughput(q));

  q = question(Standard::Dot153, 55, 1000, AccessMode::Basic);
  EXPECT_EQ(kind_of([&] { dot11::max_throughput(q); }), ErrorKind::NotApplicable);
}

TEST(UpperLimit, WorkedValues) {
  EXPECT_DOUBLE_EQ(dot11::throughput_upper_limit(Standard::Dot11a, 1000, AccessMode::Basic),
                   8000.0 / (34 + 67.5 + 24 + 16 + 28 + 2));
  EXPECT_NEAR(dot11::throughput_upper_limit(Standard::Dot11a, 1000, AccessMode::Basic), 46.65, 0.005);
  EXPECT_DOUBLE_EQ(dot11::throughput_upper_limit(Standard::Dot11b, 1000, AccessMode::Basic),
                   8000.0 / (50 + 310 + 192 + 10 + 248 + 2));
  EXPECT_NEAR(dot11::throughput_upper_limit(Standard::Dot11b, 1000, AccessMode::Basic), 9.85, 0.005);
  EXPECT_EQ(kind_of([] { dot11::throughput_upper_limit(Standard::Dot153, 1000, AccessMode::Basic); }),
            ErrorKind::NotApplicable);
}

TEST(UpperLimit, IsTheLargeRateLimit) {
  // 802.11b approaches the limit from below as the rate grows.
  const double tul = dot11::throughput_upper_limit(Standard::Dot11b, 1000, AccessMode::RtsCts);
  auto q = question(Standard::Dot11b, 1e9, 1000, AccessMode::RtsCts);
  q.allow_hypothetical_rate = true;
  const double near_limit = dot11::max_throughput(q).throughput_mbps;
  EXPECT_LT(near_limit, tul);
  EXPECT_NEAR(near_limit, tul, 1e-6);

  // 802.11a reaches it once the frame body fits one OFDM symbol.
  auto a = question(Standard::Dot11a, 1e6, 1000, AccessMode::Basic);
  a.allow_hypothetical_rate = true;
  EXPECT_DOUBLE_EQ(dot11::max_throughput(a).throughput_mbps,
                   dot11::throughput_upper_limit(Standard::Dot11a, 1000, AccessMode::Basic));
}

class Dot11Properties : public ::testing::TestWithParam<Standard> {};

TEST_P(Dot11Properties, InvariantsHoldOverRandomQuestions) {
  const Standard s = GetParam();
  std::mt19937 rng(20260101u + static_cast<unsigned>(s));
  std::uniform_int_distribution<std::uint32_t> payload(1, kDefaultMaxMsduBytes);
  const auto modes = rate_modes(s);
  for (int i = 0; i < 2000; ++i) {
    const std::uint32_t x = payload(rng);
    double previous_basic = 0.0;
    for (const auto& m : modes) {
      const auto basic = dot11::max_throughput(question(s, m.rate_mbps, x, AccessMode::Basic));
      const auto rts = dot11::max_throughput(question(s, m.rate_mbps, x, AccessMode::RtsCts));
      for (const auto* a : {&basic, &rts}) {
        ASSERT_GT(a->throughput_mbps, 0.0);
        ASSERT_LT(a->throughput_mbps, m.rate_mbps);
        ASSERT_GT(a->bandwidth_efficiency, 0.0);
        ASSERT_LT(a->bandwidth_efficiency, 1.0);
        ASSERT_NEAR(a->components.total(), a->delay_us, 1e-9 * a->delay_us);
        ASSERT_DOUBLE_EQ(a->throughput_mbps, 8.0 * x / a->delay_us);
        ASSERT_LT(a->throughput_mbps,
                  dot11::throughput_upper_limit(s, x, a->question.access_mode));
      }
      ASSERT_LT(rts.throughput_mbps, basic.throughput_mbps);
      ASSERT_GE(basic.throughput_mbps, previous_basic);
      previous_basic = basic.throughput_mbps;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Standards, Dot11Properties, ::testing::Values(Standard::Dot11a, Standard::Dot11b),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Dot11bProperties, ThroughputStrictlyIncreasesWithPayload) {
  for (const auto& m : rate_modes(Standard::Dot11b)) {
    for (AccessMode mode : {AccessMode::Basic, AccessMode::RtsCts}) {
      double previous = 0.0;
      for (std::uint32_t x = 1; x <= kDefaultMaxMsduBytes; ++x) {
        const double t = dot11::max_throughput(question(Standard::Dot11b, m.rate_mbps, x, mode)).throughput_mbps;
        ASSERT_GT(t, previous);
        previous = t;
      }
    }
  }
}

}  // namespace
}  // namespace macthru
