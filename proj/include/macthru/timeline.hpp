#pragma once

// Explicit frame-exchange timeline for one protocol cycle.
//
// The timeline is built directly from profile fields and the rate-mode
// table by walking the exchange event by event: OFDM symbols and stuff
// bits are counted rather than computed in closed form. Its duration is
// therefore an independent check on dot11::cycle_delay and the 802.15.3
// throughput formulas.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "macthru/dot11.hpp"
#include "macthru/dot153.hpp"
#include "macthru/error.hpp"
#include "macthru/timing_model.hpp"

namespace macthru {

enum class EventKind {
  Difs,
  Backoff,
  Rts,
  Cts,
  Sifs,
  Mifs,
  PhyPreamble,
  PhyHeader,
  MacHeader,
  Hcs,
  Payload,
  Fcs,
  Stuff,
  Tail,
  Ack,
  Propagation,
};

inline constexpr std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::Difs: return "Difs";
    case EventKind::Backoff: return "Backoff";
    case EventKind::Rts: return "Rts";
    case EventKind::Cts: return "Cts";
    case EventKind::Sifs: return "Sifs";
    case EventKind::Mifs: return "Mifs";
    case EventKind::PhyPreamble: return "PhyPreamble";
    case EventKind::PhyHeader: return "PhyHeader";
    case EventKind::MacHeader: return "MacHeader";
    case EventKind::Hcs: return "Hcs";
    case EventKind::Payload: return "Payload";
    case EventKind::Fcs: return "Fcs";
    case EventKind::Stuff: return "Stuff";
    case EventKind::Tail: return "Tail";
    case EventKind::Ack: return "Ack";
    case EventKind::Propagation: return "Propagation";
  }
  return "Unknown";
}

using Question = std::variant<Dot11Question, Dot153Question>;

inline Standard standard_of(const Question& q) {
  if (const auto* d11 = std::get_if<Dot11Question>(&q)) return d11->standard;
  return Standard::Dot153;
}

inline std::uint32_t payload_of(const Question& q) {
  return std::visit([](const auto& v) { return v.payload_bytes; }, q);
}

struct TimelineEvent {
  EventKind kind;
  double start_us = 0.0;
  double duration_us = 0.0;
  // Index of the data frame this event belongs to; -1 outside data frames.
  int frame = -1;
};

struct Timeline {
  Question question;
  std::vector<TimelineEvent> events;
  std::uint32_t burst_frames = 1;

  std::size_t count(EventKind kind) const {
    std::size_t n = 0;
    for (const auto& e : events) n += e.kind == kind ? 1 : 0;
    return n;
  }

  // Events outside data frames count once each; each data frame counts once.
  std::size_t top_level_count() const {
    std::set<int> frames;
    std::size_t n = 0;
    for (const auto& e : events) {
      if (e.frame < 0) {
        ++n;
      } else {
        frames.insert(e.frame);
      }
    }
    return n + frames.size();
  }

  bool contiguous() const {
    if (events.empty() || events.front().start_us != 0.0) return false;
    for (std::size_t i = 1; i < events.size(); ++i) {
      const auto& prev = events[i - 1];
      if (events[i].start_us != prev.start_us + prev.duration_us) return false;
      if (events[i].duration_us < 0.0) return false;
    }
    return events.front().duration_us >= 0.0;
  }
};

namespace detail {

class TimelineBuilder {
 public:
  void add(EventKind kind, double duration, int frame = -1) {
    events_.push_back({kind, cursor_, duration, frame});
    cursor_ += duration;
  }
  std::vector<TimelineEvent> take() { return std::move(events_); }

 private:
  std::vector<TimelineEvent> events_;
  double cursor_ = 0.0;
};

inline std::int64_t count_symbols(std::int64_t bits, std::int64_t bits_per_symbol) {
  std::int64_t symbols = 0;
  for (std::int64_t carried = 0; carried < bits; carried += bits_per_symbol) ++symbols;
  return symbols;
}

inline std::int64_t bits_per_ofdm_symbol(const StandardProfile& p, double rate_mbps, std::string_view field) {
  const double t_symbol = require(p.t_symbol, p.standard, "t_symbol");
  const double product = rate_mbps * t_symbol;
  const auto rounded = std::llround(product);
  if (!(rate_mbps > 0.0) || static_cast<double>(rounded) != product || rounded <= 0) {
    throw Error(ErrorKind::InvalidRate, std::string(field), "no whole number of bits per OFDM symbol");
  }
  return rounded;
}

// Airtime of an 802.11 frame body of `bytes` MAC bytes at `rate_mbps`,
// excluding PHY preamble and header.
inline double dot11_body_time(const StandardProfile& p, double rate_mbps, std::int64_t bytes,
                              std::string_view field) {
  if (p.standard == Standard::Dot11a) {
    const std::int64_t per_symbol = bits_per_ofdm_symbol(p, rate_mbps, field);
    return static_cast<double>(count_symbols(16 + 8 * bytes + 6, per_symbol)) * *p.t_symbol;
  }
  return static_cast<double>(8 * bytes) / rate_mbps;
}

inline void add_dot11_control(TimelineBuilder& b, const StandardProfile& p, EventKind kind, int bytes) {
  const double rate = require(p.control_rate_mbps, p.standard, "control_rate_mbps");
  b.add(kind, p.t_preamble + p.t_phy + dot11_body_time(p, rate, bytes, "control_rate_mbps"));
}

inline Timeline build_dot11(const Dot11Question& q, const StandardProfile& p) {
  dot11::validate(q, p);
  TimelineBuilder b;
  b.add(EventKind::Difs, require(p.t_difs, p.standard, "t_difs"));
  b.add(EventKind::Backoff, require(p.slot_time, p.standard, "slot_time") *
                                require(p.cw_min_slots, p.standard, "cw_min_slots") * 0.5);
  if (q.access_mode == AccessMode::RtsCts) {
    add_dot11_control(b, p, EventKind::Rts, require(p.rts_bytes, p.standard, "rts_bytes"));
    b.add(EventKind::Sifs, p.t_sifs);
    add_dot11_control(b, p, EventKind::Cts, require(p.cts_bytes, p.standard, "cts_bytes"));
    b.add(EventKind::Sifs, p.t_sifs);
  }

  const std::int64_t header = require(p.mac_header_bytes, p.standard, "mac_header_bytes");
  b.add(EventKind::PhyPreamble, p.t_preamble, 0);
  b.add(EventKind::PhyHeader, p.t_phy, 0);
  if (p.standard == Standard::Dot11a) {
    // Header and payload share OFDM symbols, so the frame body is one event.
    b.add(EventKind::Payload, dot11_body_time(p, q.rate_mbps, header + q.payload_bytes, "rate_mbps"), 0);
  } else {
    b.add(EventKind::MacHeader, dot11_body_time(p, q.rate_mbps, header, "rate_mbps"), 0);
    b.add(EventKind::Payload, dot11_body_time(p, q.rate_mbps, q.payload_bytes, "rate_mbps"), 0);
  }

  b.add(EventKind::Sifs, p.t_sifs);
  add_dot11_control(b, p, EventKind::Ack, require(p.ack_bytes, p.standard, "ack_bytes"));
  b.add(EventKind::Propagation, require(p.propagation_delay, p.standard, "propagation_delay") +
                                    require(p.propagation_delay, p.standard, "propagation_delay"));
  return Timeline{q, b.take(), 1};
}

inline void add_dot153_frame(TimelineBuilder& b, const StandardProfile& p, const RateMode& mode,
                             std::uint32_t payload_bytes, int frame) {
  const double rate = mode.rate_mbps;
  const int fcs = require(p.fcs_bytes, p.standard, "fcs_bytes");
  b.add(EventKind::PhyPreamble, p.t_preamble, frame);
  b.add(EventKind::PhyHeader, p.t_phy, frame);
  b.add(EventKind::MacHeader, require(p.t_mac_header, p.standard, "t_mac_header"), frame);
  b.add(EventKind::Hcs, require(p.t_hcs, p.standard, "t_hcs"), frame);
  b.add(EventKind::Payload, 8.0 * payload_bytes / rate, frame);
  b.add(EventKind::Fcs, 8.0 * fcs / rate, frame);
  if (mode.stuff_eligible) {
    const std::uint64_t mpdu_bits = 8ULL * (static_cast<std::uint64_t>(payload_bytes) + fcs);
    std::uint64_t pad = 0;
    while ((mpdu_bits + pad) % static_cast<std::uint64_t>(mode.bits_per_symbol) != 0) ++pad;
    if (pad > 0) b.add(EventKind::Stuff, static_cast<double>(pad) / rate, frame);
  }
  b.add(EventKind::Tail,
        static_cast<double>(mode.tail_symbols) / require(p.base_symbol_rate_msps, p.standard, "base_symbol_rate_msps"),
        frame);
}

inline Timeline build_dot153(const Dot153Question& q, const StandardProfile& p) {
  dot153::validate(q, p);
  const auto mode = find_rate_mode(Standard::Dot153, q.rate_mbps);
  const double mifs = require(p.t_mifs, p.standard, "t_mifs");
  TimelineBuilder b;
  const auto ack = [&] {
    b.add(EventKind::Sifs, p.t_sifs);
    b.add(EventKind::Ack, p.t_preamble + p.t_phy + require(p.t_mac_header, p.standard, "t_mac_header") +
                              require(p.t_hcs, p.standard, "t_hcs"));
    b.add(EventKind::Sifs, p.t_sifs);
  };

  std::uint32_t frames = 1;
  switch (q.policy.kind) {
    case AckPolicyKind::ImmAck:
      add_dot153_frame(b, p, *mode, q.payload_bytes, 0);
      ack();
      break;
    case AckPolicyKind::DlyAck:
      frames = q.policy.burst;
      for (std::uint32_t i = 0; i < frames; ++i) {
        if (i > 0) b.add(EventKind::Mifs, mifs);
        add_dot153_frame(b, p, *mode, q.payload_bytes, static_cast<int>(i));
      }
      ack();
      break;
    case AckPolicyKind::NoAck:
      add_dot153_frame(b, p, *mode, q.payload_bytes, 0);
      b.add(EventKind::Mifs, mifs);
      break;
  }
  return Timeline{q, b.take(), frames};
}

}  // namespace detail

inline Timeline build_timeline(const Question& q, const ProfileSet& profiles) {
  if (const auto* d11 = std::get_if<Dot11Question>(&q)) {
    return detail::build_dot11(*d11, profiles.get(d11->standard));
  }
  return detail::build_dot153(std::get<Dot153Question>(q), profiles.get(Standard::Dot153));
}

inline Timeline build_timeline(const Question& q) { return build_timeline(q, ProfileSet{}); }

inline double timeline_duration(const Timeline& t) {
  if (t.events.empty()) return 0.0;
  return t.events.back().start_us + t.events.back().duration_us;
}

// MSDU bits delivered per microsecond of timeline, i.e. Mbps.
inline double effective_throughput(const Timeline& t) {
  const double duration = timeline_duration(t);
  if (!(duration > 0.0)) {
    throw Error(ErrorKind::UndefinedThroughput, "timeline", "duration is zero");
  }
  return static_cast<double>(t.burst_frames) * 8.0 * payload_of(t.question) / duration;
}

// One line per event: kind, start, duration, cumulative (all in us).
inline void render_trace(std::ostream& out, const Timeline& t) {
  char buf[128];
  for (const auto& e : t.events) {
    std::snprintf(buf, sizeof buf, "%s\t%.6g\t%.6g\t%.6g\n", std::string(to_string(e.kind)).c_str(),
                  e.start_us, e.duration_us, e.start_us + e.duration_us);
    out << buf;
  }
}

}  // namespace macthru
