#pragma once

// Saturated, collision-free 802.11a/b DCF cycle: one MSDU per
// DIFS + mean backoff + [RTS + SIFS + CTS + SIFS] + DATA + SIFS + ACK + 2 tau.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "macthru/error.hpp"
#include "macthru/timing_model.hpp"

namespace macthru {

enum class AccessMode { Basic, RtsCts };

inline constexpr std::string_view to_string(AccessMode m) {
  return m == AccessMode::Basic ? "basic" : "rts_cts";
}

inline AccessMode parse_access_mode(std::string_view name) {
  if (name == "basic") return AccessMode::Basic;
  if (name == "rts_cts" || name == "rts-cts" || name == "rts") return AccessMode::RtsCts;
  throw Error(ErrorKind::InvalidMode, "mode", "'" + std::string(name) + "' (expected basic or rts_cts)");
}

inline constexpr std::uint32_t kDefaultMaxMsduBytes = 2312;

// Throughput upper limit quoted for 802.11a in the literature; kept for
// comparison with the computed limit, which assumes different overheads.
inline constexpr double kReportedDot11aTulMbps = 50.2;

struct Dot11Question {
  Standard standard = Standard::Dot11a;
  double rate_mbps = 54.0;
  std::uint32_t payload_bytes = 1000;
  AccessMode access_mode = AccessMode::Basic;
  // Permit rates outside the standard's ladder (asymptote studies).
  bool allow_hypothetical_rate = false;
  // Permit x = 0; throughput is then reported as 0.
  bool allow_zero_payload = false;
  std::uint32_t max_payload_bytes = kDefaultMaxMsduBytes;

  bool operator==(const Dot11Question&) const = default;
};

struct Dot11Components {
  double difs = 0.0;
  double backoff = 0.0;
  double rts = 0.0;
  double cts = 0.0;
  double data = 0.0;
  double sifs_total = 0.0;
  double ack = 0.0;
  double propagation = 0.0;

  double total() const { return difs + backoff + rts + cts + data + sifs_total + ack + propagation; }
};

struct Dot11Answer {
  Dot11Question question;
  Dot11Components components;
  double delay_us = 0.0;
  double throughput_mbps = 0.0;
  double bandwidth_efficiency = 0.0;
};

namespace dot11 {

namespace detail {

inline void check_dot11_profile(const StandardProfile& p) {
  if (!is_dot11(p.standard)) {
    throw Error(ErrorKind::NotApplicable, "standard",
                std::string(to_string(p.standard)) + " is not an 802.11 profile");
  }
}

inline void check_rate(double rate_mbps) {
  if (!(rate_mbps > 0.0) || !std::isfinite(rate_mbps)) {
    throw Error(ErrorKind::InvalidRate, "rate_mbps", "must be positive and finite");
  }
}

inline std::int64_t dot11a_n_dbps(const StandardProfile& p, double rate_mbps) {
  check_rate(rate_mbps);
  const auto n = ofdm_data_bits(rate_mbps, require(p.t_symbol, p.standard, "t_symbol"));
  if (!n) {
    throw Error(ErrorKind::InvalidRate, "rate_mbps",
                "rate x symbol time must be a whole number of bits per OFDM symbol");
  }
  return *n;
}

}  // namespace detail

// Mean backoff: half the minimum contention window, in slots.
inline double backoff_time(const StandardProfile& p) {
  detail::check_dot11_profile(p);
  const int cw = require(p.cw_min_slots, p.standard, "cw_min_slots");
  return (static_cast<double>(cw) / 2.0) * require(p.slot_time, p.standard, "slot_time");
}

inline double data_time_11b(const StandardProfile& p, double rate_mbps, std::uint32_t payload_bytes) {
  detail::check_rate(rate_mbps);
  const double header = require(p.mac_header_bytes, p.standard, "mac_header_bytes");
  return p.t_phy + p.t_preamble + 8.0 * (header + payload_bytes) / rate_mbps;
}

inline double data_time_11b(double rate_mbps, std::uint32_t payload_bytes) {
  return data_time_11b(profile(Standard::Dot11b), rate_mbps, payload_bytes);
}

inline double data_time_11a(const StandardProfile& p, double rate_mbps, std::uint32_t payload_bytes) {
  const std::int64_t n_dbps = detail::dot11a_n_dbps(p, rate_mbps);
  const std::int64_t header = require(p.mac_header_bytes, p.standard, "mac_header_bytes");
  const std::int64_t bits = kOfdmServiceTailBits + 8 * (header + payload_bytes);
  const std::int64_t symbols = (bits + n_dbps - 1) / n_dbps;
  return p.t_phy + p.t_preamble + require(p.t_symbol, p.standard, "t_symbol") * static_cast<double>(symbols);
}

inline double data_time_11a(double rate_mbps, std::uint32_t payload_bytes) {
  return data_time_11a(profile(Standard::Dot11a), rate_mbps, payload_bytes);
}

inline double data_time(const StandardProfile& p, double rate_mbps, std::uint32_t payload_bytes) {
  detail::check_dot11_profile(p);
  return p.standard == Standard::Dot11a ? data_time_11a(p, rate_mbps, payload_bytes)
                                        : data_time_11b(p, rate_mbps, payload_bytes);
}

inline void validate(const Dot11Question& q, const StandardProfile& p) {
  if (!is_dot11(q.standard)) {
    throw Error(ErrorKind::NotApplicable, "standard",
                std::string(to_string(q.standard)) + " is not an 802.11 standard");
  }
  if (p.standard != q.standard) {
    throw Error(ErrorKind::InvalidMode, "standard", "profile does not match question");
  }
  detail::check_rate(q.rate_mbps);
  if (!q.allow_hypothetical_rate && !find_rate_mode(q.standard, q.rate_mbps)) {
    throw Error(ErrorKind::InvalidRate, "rate_mbps",
                std::to_string(q.rate_mbps) + " is not a " + std::string(to_string(q.standard)) + " rate");
  }
  if (q.standard == Standard::Dot11a) detail::dot11a_n_dbps(p, q.rate_mbps);
  if (q.payload_bytes == 0 && !q.allow_zero_payload) {
    throw Error(ErrorKind::InvalidPayload, "payload_bytes", "must be at least 1");
  }
  if (q.payload_bytes > q.max_payload_bytes) {
    throw Error(ErrorKind::InvalidPayload, "payload_bytes",
                std::to_string(q.payload_bytes) + " exceeds MSDU limit " +
                    std::to_string(q.max_payload_bytes));
  }
}

namespace detail {

// Every term of the cycle except the data frame.
inline Dot11Components dot11_overhead(const StandardProfile& p, AccessMode mode) {
  Dot11Components c;
  c.difs = require(p.t_difs, p.standard, "t_difs");
  c.backoff = backoff_time(p);
  if (mode == AccessMode::RtsCts) {
    c.rts = control_frame_time(p, ControlFrame::Rts);
    c.cts = control_frame_time(p, ControlFrame::Cts);
    c.sifs_total = 3.0 * p.t_sifs;
  } else {
    c.sifs_total = p.t_sifs;
  }
  c.ack = control_frame_time(p, ControlFrame::Ack);
  c.propagation = 2.0 * require(p.propagation_delay, p.standard, "propagation_delay");
  return c;
}

}  // namespace detail

inline Dot11Components cycle_delay(const Dot11Question& q, const StandardProfile& p) {
  validate(q, p);
  Dot11Components c = detail::dot11_overhead(p, q.access_mode);
  c.data = data_time(p, q.rate_mbps, q.payload_bytes);
  return c;
}

inline Dot11Components cycle_delay(const Dot11Question& q) { return cycle_delay(q, profile(q.standard)); }

inline Dot11Answer max_throughput(const Dot11Question& q, const StandardProfile& p) {
  Dot11Answer a;
  a.question = q;
  a.components = cycle_delay(q, p);
  a.delay_us = a.components.total();
  a.throughput_mbps = 8.0 * q.payload_bytes / a.delay_us;
  a.bandwidth_efficiency = a.throughput_mbps / q.rate_mbps;
  return a;
}

inline Dot11Answer max_throughput(const Dot11Question& q) { return max_throughput(q, profile(q.standard)); }

// Limit of max_throughput as the data rate grows without bound: the data
// frame shrinks to its PHY preamble and header (plus one OFDM symbol for
// 802.11a), every other overhead term is unchanged.
inline double throughput_upper_limit(const StandardProfile& p, std::uint32_t payload_bytes, AccessMode mode) {
  detail::check_dot11_profile(p);
  if (payload_bytes == 0) {
    throw Error(ErrorKind::InvalidPayload, "payload_bytes", "must be at least 1");
  }
  Dot11Components c = detail::dot11_overhead(p, mode);
  c.data = p.t_phy + p.t_preamble;
  if (p.standard == Standard::Dot11a) c.data += require(p.t_symbol, p.standard, "t_symbol");
  return 8.0 * payload_bytes / c.total();
}

inline double throughput_upper_limit(Standard standard, std::uint32_t payload_bytes, AccessMode mode) {
  if (!is_dot11(standard)) {
    throw Error(ErrorKind::NotApplicable, "standard", "throughput upper limit is defined for 802.11 only");
  }
  return throughput_upper_limit(profile(standard), payload_bytes, mode);
}

}  // namespace dot11
}  // namespace macthru
