#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "macthru/error.hpp"

namespace macthru {

enum class Standard { Dot11a, Dot11b, Dot153 };

inline constexpr std::array<Standard, 3> kAllStandards = {Standard::Dot11a, Standard::Dot11b,
                                                          Standard::Dot153};

inline constexpr std::string_view to_string(Standard s) {
  switch (s) {
    case Standard::Dot11a: return "dot11a";
    case Standard::Dot11b: return "dot11b";
    case Standard::Dot153: return "dot153";
  }
  return "unknown";
}

inline Standard parse_standard(std::string_view name) {
  for (Standard s : kAllStandards) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::UnsupportedStandard, "standard", "'" + std::string(name) + "'");
}

inline constexpr bool is_dot11(Standard s) { return s == Standard::Dot11a || s == Standard::Dot11b; }

// Timing constants for one standard. Times in microseconds, rates in Mbps.
// Fields that a standard does not define are left empty.
struct StandardProfile {
  Standard standard = Standard::Dot11a;

  double t_phy = 0.0;
  double t_preamble = 0.0;
  double t_sifs = 0.0;
  std::optional<double> t_difs;
  std::optional<double> t_mifs;
  std::optional<int> cw_min_slots;
  std::optional<double> slot_time;
  std::optional<double> propagation_delay;
  std::optional<double> t_symbol;

  std::optional<int> mac_header_bytes;
  std::optional<double> t_mac_header;
  std::optional<double> t_hcs;

  std::optional<double> control_rate_mbps;
  std::optional<int> rts_bytes;
  std::optional<int> cts_bytes;
  std::optional<int> ack_bytes;

  std::optional<int> fcs_bytes;
  std::optional<double> base_symbol_rate_msps;

  bool operator==(const StandardProfile&) const = default;
};

// Unwraps an optional profile field, failing with not-applicable when the
// standard does not define it.
template <typename T>
T require(const std::optional<T>& value, Standard standard, std::string_view field) {
  if (!value) {
    throw Error(ErrorKind::NotApplicable, std::string(to_string(standard)) + "." + std::string(field),
                "field is not defined for this standard");
  }
  return *value;
}

namespace detail {

inline StandardProfile dot11a_profile() {
  StandardProfile p;
  p.standard = Standard::Dot11a;
  p.t_phy = 4.0;
  p.t_preamble = 16.0;
  p.t_sifs = 16.0;
  p.t_difs = 34.0;
  p.cw_min_slots = 15;
  p.slot_time = 9.0;
  p.propagation_delay = 1.0;
  p.t_symbol = 4.0;
  p.mac_header_bytes = 30;
  p.control_rate_mbps = 24.0;
  p.rts_bytes = 20;
  p.cts_bytes = 14;
  p.ack_bytes = 14;
  return p;
}

inline StandardProfile dot11b_profile() {
  StandardProfile p;
  p.standard = Standard::Dot11b;
  p.t_phy = 48.0;
  p.t_preamble = 144.0;
  p.t_sifs = 10.0;
  p.t_difs = 50.0;
  p.cw_min_slots = 31;
  p.slot_time = 20.0;
  p.propagation_delay = 1.0;
  p.mac_header_bytes = 30;
  p.control_rate_mbps = 2.0;
  p.rts_bytes = 20;
  p.cts_bytes = 14;
  p.ack_bytes = 14;
  return p;
}

// MAC header and HCS are sent at the 22 Mbps base rate, so they are fixed
// times rather than byte counts.
inline StandardProfile dot153_profile() {
  StandardProfile p;
  p.standard = Standard::Dot153;
  p.t_phy = 0.727;
  p.t_preamble = 7.27;
  p.t_sifs = 10.0;
  p.t_mifs = 2.0;
  p.mac_header_bytes = 10;
  p.t_mac_header = 3.63;
  p.t_hcs = 0.727;
  p.fcs_bytes = 4;
  p.base_symbol_rate_msps = 11.0;
  return p;
}

}  // namespace detail

inline StandardProfile profile(Standard standard) {
  switch (standard) {
    case Standard::Dot11a: return detail::dot11a_profile();
    case Standard::Dot11b: return detail::dot11b_profile();
    case Standard::Dot153: return detail::dot153_profile();
  }
  throw Error(ErrorKind::UnsupportedStandard, "standard",
              "enumerator " + std::to_string(static_cast<int>(standard)));
}

// The active profile for each standard; starts from the defaults and may be
// modified by a parameter-override file (see parameters.hpp).
class ProfileSet {
 public:
  ProfileSet()
      : profiles_{profile(Standard::Dot11a), profile(Standard::Dot11b), profile(Standard::Dot153)} {}

  const StandardProfile& get(Standard s) const { return profiles_.at(index(s)); }
  StandardProfile& get(Standard s) { return profiles_.at(index(s)); }

  bool operator==(const ProfileSet&) const = default;

 private:
  static std::size_t index(Standard s) { return static_cast<std::size_t>(s); }

  std::array<StandardProfile, 3> profiles_;
};

struct RateMode {
  Standard standard;
  double rate_mbps;
  // For 802.11a this is the data bits per OFDM symbol (equal to n_dbps).
  int bits_per_symbol;
  int tail_symbols;
  bool stuff_eligible;
  std::optional<int> n_dbps;
  std::string_view modulation;
};

namespace detail {

inline constexpr std::array<RateMode, 8> kDot11aModes = {{
    {Standard::Dot11a, 6.0, 24, 0, false, 24, "BPSK 1/2"},
    {Standard::Dot11a, 9.0, 36, 0, false, 36, "BPSK 3/4"},
    {Standard::Dot11a, 12.0, 48, 0, false, 48, "QPSK 1/2"},
    {Standard::Dot11a, 18.0, 72, 0, false, 72, "QPSK 3/4"},
    {Standard::Dot11a, 24.0, 96, 0, false, 96, "16-QAM 1/2"},
    {Standard::Dot11a, 36.0, 144, 0, false, 144, "16-QAM 3/4"},
    {Standard::Dot11a, 48.0, 192, 0, false, 192, "64-QAM 2/3"},
    {Standard::Dot11a, 54.0, 216, 0, false, 216, "64-QAM 3/4"},
}};

inline constexpr std::array<RateMode, 4> kDot11bModes = {{
    {Standard::Dot11b, 1.0, 1, 0, false, std::nullopt, "DBPSK"},
    {Standard::Dot11b, 2.0, 2, 0, false, std::nullopt, "DQPSK"},
    {Standard::Dot11b, 5.5, 4, 0, false, std::nullopt, "CCK"},
    {Standard::Dot11b, 11.0, 8, 0, false, std::nullopt, "CCK"},
}};

inline constexpr std::array<RateMode, 5> kDot153Modes = {{
    {Standard::Dot153, 11.0, 1, 3, false, std::nullopt, "QPSK-TCM"},
    {Standard::Dot153, 22.0, 2, 4, false, std::nullopt, "DQPSK"},
    {Standard::Dot153, 33.0, 3, 4, true, std::nullopt, "16-QAM-TCM"},
    {Standard::Dot153, 44.0, 4, 4, false, std::nullopt, "32-QAM-TCM"},
    {Standard::Dot153, 55.0, 5, 4, true, std::nullopt, "64-QAM-TCM"},
}};

}  // namespace detail

inline std::span<const RateMode> rate_modes(Standard standard) {
  switch (standard) {
    case Standard::Dot11a: return detail::kDot11aModes;
    case Standard::Dot11b: return detail::kDot11bModes;
    case Standard::Dot153: return detail::kDot153Modes;
  }
  return {};
}

inline std::optional<RateMode> find_rate_mode(Standard standard, double rate_mbps) {
  for (const RateMode& m : rate_modes(standard)) {
    if (m.rate_mbps == rate_mbps) return m;
  }
  return std::nullopt;
}

// Data bits carried by one OFDM symbol at `rate_mbps`; empty unless the
// product with the symbol time is a positive integer.
inline std::optional<std::int64_t> ofdm_data_bits(double rate_mbps, double t_symbol_us) {
  if (!(rate_mbps > 0.0) || !(t_symbol_us > 0.0)) return std::nullopt;
  const double bits = rate_mbps * t_symbol_us;
  if (!std::isfinite(bits) || bits != std::floor(bits) || bits > 9.0e15) return std::nullopt;
  return static_cast<std::int64_t>(bits);
}

// Padding bits that make an MPDU a whole number of symbols.
inline std::uint64_t stuff_bits(std::uint64_t mpdu_bytes, std::uint64_t bits_per_symbol) {
  if (bits_per_symbol == 0) {
    throw Error(ErrorKind::InvalidMode, "bits_per_symbol", "must be at least 1");
  }
  if (mpdu_bytes == 0) {
    throw Error(ErrorKind::InvalidPayload, "mpdu_bytes", "MPDU must be non-empty");
  }
  return (bits_per_symbol - (8 * mpdu_bytes) % bits_per_symbol) % bits_per_symbol;
}

enum class ControlFrame { Rts, Cts, Ack };

inline constexpr std::string_view to_string(ControlFrame f) {
  switch (f) {
    case ControlFrame::Rts: return "rts";
    case ControlFrame::Cts: return "cts";
    case ControlFrame::Ack: return "ack";
  }
  return "unknown";
}

inline int control_frame_bytes(const StandardProfile& p, ControlFrame kind) {
  switch (kind) {
    case ControlFrame::Rts: return require(p.rts_bytes, p.standard, "rts_bytes");
    case ControlFrame::Cts: return require(p.cts_bytes, p.standard, "cts_bytes");
    case ControlFrame::Ack: return require(p.ack_bytes, p.standard, "ack_bytes");
  }
  throw Error(ErrorKind::InvalidMode, "frame_kind", "unknown control frame");
}

// 802.11a frames carry 16 SERVICE bits and 6 tail bits inside the OFDM
// symbols in addition to the PSDU.
inline constexpr std::int64_t kOfdmServiceTailBits = 22;

// Airtime of an 802.11 control frame sent at the profile's control rate.
inline double control_frame_time(const StandardProfile& p, ControlFrame kind) {
  if (!is_dot11(p.standard)) {
    throw Error(ErrorKind::NotApplicable, "frame_kind",
                "control frames are only modeled for 802.11; 802.15.3 ACK is header-only");
  }
  const double rate = require(p.control_rate_mbps, p.standard, "control_rate_mbps");
  if (!(rate > 0.0)) {
    throw Error(ErrorKind::InvalidRate, "control_rate_mbps", "must be positive");
  }
  const std::int64_t frame_bits = 8 * static_cast<std::int64_t>(control_frame_bytes(p, kind));
  if (p.standard == Standard::Dot11b) {
    return p.t_phy + p.t_preamble + static_cast<double>(frame_bits) / rate;
  }
  const double t_symbol = require(p.t_symbol, p.standard, "t_symbol");
  const auto n_dbps = ofdm_data_bits(rate, t_symbol);
  if (!n_dbps) {
    throw Error(ErrorKind::InvalidRate, "control_rate_mbps",
                "rate x symbol time must be a whole number of bits");
  }
  const std::int64_t bits = kOfdmServiceTailBits + frame_bits;
  const std::int64_t symbols = (bits + *n_dbps - 1) / *n_dbps;
  return p.t_phy + p.t_preamble + t_symbol * static_cast<double>(symbols);
}

}  // namespace macthru
