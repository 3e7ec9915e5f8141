#pragma once

// 802.15.3 channel-time-allocation throughput. Beacon and CAP time are not
// counted; every figure is per-CTA steady state.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "macthru/error.hpp"
#include "macthru/timing_model.hpp"

namespace macthru {

enum class AckPolicyKind { ImmAck, DlyAck, NoAck };

inline constexpr std::string_view to_string(AckPolicyKind k) {
  switch (k) {
    case AckPolicyKind::ImmAck: return "imm_ack";
    case AckPolicyKind::DlyAck: return "dly_ack";
    case AckPolicyKind::NoAck: return "no_ack";
  }
  return "unknown";
}

struct AckPolicy {
  AckPolicyKind kind = AckPolicyKind::ImmAck;
  // Frames per acknowledged burst; meaningful for DlyAck only.
  std::uint32_t burst = 1;

  static AckPolicy imm() { return {AckPolicyKind::ImmAck, 1}; }
  static AckPolicy dly(std::uint32_t n) { return {AckPolicyKind::DlyAck, n}; }
  static AckPolicy no_ack() { return {AckPolicyKind::NoAck, 1}; }

  bool operator==(const AckPolicy&) const = default;
};

inline AckPolicyKind parse_ack_policy(std::string_view name) {
  if (name == "imm" || name == "imm_ack") return AckPolicyKind::ImmAck;
  if (name == "dly" || name == "dly_ack") return AckPolicyKind::DlyAck;
  if (name == "no" || name == "no_ack" || name == "noack") return AckPolicyKind::NoAck;
  throw Error(ErrorKind::InvalidMode, "policy",
              "'" + std::string(name) + "' (expected imm_ack, dly_ack or no_ack)");
}

struct Dot153Question {
  double rate_mbps = 55.0;
  std::uint32_t payload_bytes = 1000;
  AckPolicy policy;
  bool allow_zero_payload = false;

  bool operator==(const Dot153Question&) const = default;
};

struct Dot153Components {
  double phy = 0.0;
  double preamble = 0.0;
  double mac_header = 0.0;
  double hcs = 0.0;
  double payload = 0.0;
  double fcs = 0.0;
  double stuff = 0.0;
  double tail = 0.0;

  double total() const { return phy + preamble + mac_header + hcs + payload + fcs + stuff + tail; }
};

struct Dot153Answer {
  Dot153Question question;
  Dot153Components components;
  double data_time_us = 0.0;
  double ack_time_us = 0.0;
  double per_frame_delay_us = 0.0;
  double throughput_mbps = 0.0;
  double bandwidth_efficiency = 0.0;
  // Set for No-ACK, whose cycle (data + MIFS) is this library's extension.
  bool model_extension = false;
};

namespace dot153 {

namespace detail {

inline void check_profile(const StandardProfile& p) {
  if (p.standard != Standard::Dot153) {
    throw Error(ErrorKind::NotApplicable, "standard",
                std::string(to_string(p.standard)) + " is not an 802.15.3 profile");
  }
}

inline RateMode rate_mode(double rate_mbps) {
  if (auto m = find_rate_mode(Standard::Dot153, rate_mbps)) return *m;
  throw Error(ErrorKind::InvalidRate, "rate_mbps",
              std::to_string(rate_mbps) + " is not a dot153 rate (11, 22, 33, 44, 55)");
}

}  // namespace detail

// Frame airtime. Headers go at the base rate (fixed times); payload, FCS
// and stuff bits at the data rate; tail symbols at the base symbol rate.
inline Dot153Components data_time(const StandardProfile& p, double rate_mbps, std::uint32_t payload_bytes) {
  detail::check_profile(p);
  const RateMode mode = detail::rate_mode(rate_mbps);
  const int fcs_bytes = require(p.fcs_bytes, p.standard, "fcs_bytes");

  Dot153Components c;
  c.phy = p.t_phy;
  c.preamble = p.t_preamble;
  c.mac_header = require(p.t_mac_header, p.standard, "t_mac_header");
  c.hcs = require(p.t_hcs, p.standard, "t_hcs");
  c.payload = 8.0 * payload_bytes / rate_mbps;
  c.fcs = 8.0 * fcs_bytes / rate_mbps;
  const std::uint64_t mpdu = static_cast<std::uint64_t>(payload_bytes) + static_cast<std::uint64_t>(fcs_bytes);
  if (mode.stuff_eligible && mpdu > 0) {
    c.stuff = static_cast<double>(stuff_bits(mpdu, mode.bits_per_symbol)) / rate_mbps;
  }
  c.tail = mode.tail_symbols / require(p.base_symbol_rate_msps, p.standard, "base_symbol_rate_msps");
  return c;
}

inline Dot153Components data_time(double rate_mbps, std::uint32_t payload_bytes) {
  return data_time(profile(Standard::Dot153), rate_mbps, payload_bytes);
}

// Imm-ACK frame: PHY preamble and header plus MAC header and HCS, no body.
inline double ack_time(const StandardProfile& p) {
  detail::check_profile(p);
  return p.t_phy + p.t_preamble + require(p.t_mac_header, p.standard, "t_mac_header") +
         require(p.t_hcs, p.standard, "t_hcs");
}

inline double ack_time() { return ack_time(profile(Standard::Dot153)); }

inline void validate(const Dot153Question& q, const StandardProfile& p) {
  detail::check_profile(p);
  detail::rate_mode(q.rate_mbps);
  if (q.payload_bytes == 0 && !q.allow_zero_payload) {
    throw Error(ErrorKind::InvalidPayload, "payload_bytes", "must be at least 1");
  }
  if (q.policy.kind == AckPolicyKind::DlyAck && q.policy.burst == 0) {
    throw Error(ErrorKind::InvalidBurst, "burst_n", "Dly-ACK burst must be at least 1 frame");
  }
}

namespace detail {

inline Dot153Answer frame_answer(const Dot153Question& q, const StandardProfile& p) {
  validate(q, p);
  Dot153Answer a;
  a.question = q;
  a.components = data_time(p, q.rate_mbps, q.payload_bytes);
  a.data_time_us = a.components.total();
  a.ack_time_us = ack_time(p);
  return a;
}

inline void finish(Dot153Answer& a) {
  a.throughput_mbps = 8.0 * a.question.payload_bytes / a.per_frame_delay_us;
  a.bandwidth_efficiency = a.throughput_mbps / a.question.rate_mbps;
}

inline void require_policy(const Dot153Question& q, AckPolicyKind kind) {
  if (q.policy.kind != kind) {
    throw Error(ErrorKind::InvalidMode, "policy",
                std::string(to_string(q.policy.kind)) + " given where " + std::string(to_string(kind)) +
                    " was expected");
  }
}

}  // namespace detail

inline Dot153Answer throughput_imm(const Dot153Question& q, const StandardProfile& p) {
  detail::require_policy(q, AckPolicyKind::ImmAck);
  Dot153Answer a = detail::frame_answer(q, p);
  a.per_frame_delay_us = a.data_time_us + a.ack_time_us + 2.0 * p.t_sifs;
  detail::finish(a);
  return a;
}

// One ACK (sized as an Imm-ACK) per burst of n frames separated by MIFS.
inline Dot153Answer throughput_dly(const Dot153Question& q, const StandardProfile& p) {
  detail::require_policy(q, AckPolicyKind::DlyAck);
  Dot153Answer a = detail::frame_answer(q, p);
  const double n = q.policy.burst;
  const double mifs = require(p.t_mifs, p.standard, "t_mifs");
  a.per_frame_delay_us = (n * a.data_time_us + a.ack_time_us + (n - 1.0) * mifs + 2.0 * p.t_sifs) / n;
  detail::finish(a);
  return a;
}

inline Dot153Answer throughput_noack(const Dot153Question& q, const StandardProfile& p) {
  detail::require_policy(q, AckPolicyKind::NoAck);
  Dot153Answer a = detail::frame_answer(q, p);
  a.ack_time_us = 0.0;
  a.per_frame_delay_us = a.data_time_us + require(p.t_mifs, p.standard, "t_mifs");
  a.model_extension = true;
  detail::finish(a);
  return a;
}

inline Dot153Answer throughput(const Dot153Question& q, const StandardProfile& p) {
  switch (q.policy.kind) {
    case AckPolicyKind::ImmAck: return throughput_imm(q, p);
    case AckPolicyKind::DlyAck: return throughput_dly(q, p);
    case AckPolicyKind::NoAck: return throughput_noack(q, p);
  }
  throw Error(ErrorKind::InvalidMode, "policy", "unknown acknowledgement policy");
}

inline Dot153Answer throughput(const Dot153Question& q) { return throughput(q, profile(Standard::Dot153)); }

}  // namespace dot153
}  // namespace macthru
