#pragma once

// Operating points, sweeps, cross-standard comparisons and their CSV /
// JSON / plot / table renderings.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "macthru/dot11.hpp"
#include "macthru/dot153.hpp"
#include "macthru/error.hpp"
#include "macthru/timeline.hpp"
#include "macthru/timing_model.hpp"

namespace macthru {

struct ResultRow {
  std::string standard;
  std::string mode;
  std::string policy;
  double rate_mbps = 0.0;
  std::uint32_t payload_bytes = 0;
  std::uint32_t burst_n = 1;
  // Per burst: throughput_mbps * delay_us == 8 * payload_bytes * burst_n.
  double delay_us = 0.0;
  double throughput_mbps = 0.0;
  double bandwidth_efficiency = 0.0;

  bool operator==(const ResultRow&) const = default;
};

inline constexpr std::array<std::string_view, 9> kRowFields = {
    "standard", "mode", "policy", "rate_mbps", "payload_bytes",
    "burst_n", "delay_us", "throughput_mbps", "bandwidth_efficiency"};

// 802.15.3 rows use this mode label; 802.11 rows use the policy below since
// DCF acknowledges every data frame immediately.
inline constexpr std::string_view kCtapMode = "ctap";
inline constexpr std::string_view kDot11Policy = "imm_ack";

inline ResultRow to_row(const Dot11Answer& a) {
  return {std::string(to_string(a.question.standard)),
          std::string(to_string(a.question.access_mode)),
          std::string(kDot11Policy),
          a.question.rate_mbps,
          a.question.payload_bytes,
          1,
          a.delay_us,
          a.throughput_mbps,
          a.bandwidth_efficiency};
}

inline ResultRow to_row(const Dot153Answer& a) {
  const std::uint32_t n = a.question.policy.kind == AckPolicyKind::DlyAck ? a.question.policy.burst : 1;
  return {std::string(to_string(Standard::Dot153)),
          std::string(kCtapMode),
          std::string(to_string(a.question.policy.kind)),
          a.question.rate_mbps,
          a.question.payload_bytes,
          n,
          a.per_frame_delay_us * n,
          a.throughput_mbps,
          a.bandwidth_efficiency};
}

inline ResultRow compute_point(const Question& q, const ProfileSet& profiles) {
  if (const auto* d11 = std::get_if<Dot11Question>(&q)) {
    return to_row(dot11::max_throughput(*d11, profiles.get(d11->standard)));
  }
  return to_row(dot153::throughput(std::get<Dot153Question>(q), profiles.get(Standard::Dot153)));
}

inline ResultRow compute_point(const Question& q) { return compute_point(q, ProfileSet{}); }

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepVariable { PayloadBytes, RateMbps, BurstN };

inline constexpr std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::PayloadBytes: return "payload_bytes";
    case SweepVariable::RateMbps: return "rate_mbps";
    case SweepVariable::BurstN: return "burst_n";
  }
  return "unknown";
}

inline SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "payload_bytes" || name == "payload") return SweepVariable::PayloadBytes;
  if (name == "rate_mbps" || name == "rate") return SweepVariable::RateMbps;
  if (name == "burst_n" || name == "burst") return SweepVariable::BurstN;
  throw Error(ErrorKind::Usage, "var", "'" + std::string(name) + "' (expected payload_bytes, rate_mbps or burst_n)");
}

struct SweepSpec {
  Question base;
  SweepVariable variable = SweepVariable::PayloadBytes;
  std::vector<double> values;
};

// Inclusive arithmetic range; the stop value is kept when it lies on the grid.
inline std::vector<double> sweep_range(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) {
    throw Error(ErrorKind::InvalidSweep, "range", "need step > 0 and stop >= start");
  }
  std::vector<double> out;
  const auto n = static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9));
  for (std::int64_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

namespace detail {

inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::uint32_t whole_value(double v, std::string_view what) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 4.0e9) {
    throw Error(ErrorKind::InvalidSweep, std::string(what), format_value(v) + " is not a whole number");
  }
  return static_cast<std::uint32_t>(v);
}

inline double parse_number(std::string_view token, std::string_view context) {
  const std::string text(token);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (text.empty() || used != text.size()) {
    throw Error(ErrorKind::Usage, "select", "bad number '" + text + "' in '" + std::string(context) + "'");
  }
  return v;
}

inline Question with_value(Question q, SweepVariable var, double v) {
  switch (var) {
    case SweepVariable::PayloadBytes: {
      const auto x = whole_value(v, "payload_bytes");
      std::visit([x](auto& inner) { inner.payload_bytes = x; }, q);
      break;
    }
    case SweepVariable::RateMbps:
      std::visit([v](auto& inner) { inner.rate_mbps = v; }, q);
      break;
    case SweepVariable::BurstN: {
      auto* d153 = std::get_if<Dot153Question>(&q);
      if (d153 == nullptr || d153->policy.kind != AckPolicyKind::DlyAck) {
        throw Error(ErrorKind::InvalidSweep, "burst_n", "burst sweeps need a dot153 dly_ack question");
      }
      d153->policy.burst = whole_value(v, "burst_n");
      break;
    }
  }
  return q;
}

}  // namespace detail

inline std::vector<ResultRow> run_sweep(const SweepSpec& spec, const ProfileSet& profiles) {
  if (spec.values.empty()) throw Error(ErrorKind::InvalidSweep, "values", "sweep has no values");
  std::vector<ResultRow> rows;
  rows.reserve(spec.values.size());
  for (double v : spec.values) {
    try {
      rows.push_back(compute_point(detail::with_value(spec.base, spec.variable, v), profiles));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(to_string(spec.variable)) + "=" + detail::format_value(v), e.what());
    }
  }
  return rows;
}

inline std::vector<ResultRow> run_sweep(const SweepSpec& spec) { return run_sweep(spec, ProfileSet{}); }

// ---------------------------------------------------------------------------
// Comparisons

// One side of a comparison: a standard, its access mode or ACK policy, and
// optionally a single rate (otherwise the whole rate ladder).
struct Selection {
  Standard standard = Standard::Dot11a;
  std::optional<double> rate_mbps;
  AccessMode access_mode = AccessMode::Basic;
  AckPolicy policy;
};

// Syntax: <standard>[@<rate>][/<mode-or-policy>[:<burst>]], e.g.
// "dot11a/rts_cts", "dot153@55/dly:5", "dot11b@11".
inline Selection parse_selection(std::string_view text) {
  Selection s;
  std::string_view rest = text;
  std::string_view variant_part;
  if (const auto slash = rest.find('/'); slash != std::string_view::npos) {
    variant_part = rest.substr(slash + 1);
    rest = rest.substr(0, slash);
  }
  if (const auto at = rest.find('@'); at != std::string_view::npos) {
    s.rate_mbps = detail::parse_number(rest.substr(at + 1), text);
    rest = rest.substr(0, at);
  }
  s.standard = parse_standard(rest);
  if (s.standard == Standard::Dot153) {
    std::string_view name = variant_part.empty() ? "imm_ack" : variant_part;
    std::uint32_t burst = 1;
    if (const auto colon = name.find(':'); colon != std::string_view::npos) {
      burst = detail::whole_value(detail::parse_number(name.substr(colon + 1), text), "burst_n");
      name = name.substr(0, colon);
    }
    s.policy = {parse_ack_policy(name), burst};
    if (s.policy.kind != AckPolicyKind::DlyAck) s.policy.burst = 1;
  } else if (!variant_part.empty()) {
    s.access_mode = parse_access_mode(variant_part);
  }
  return s;
}

inline std::vector<ResultRow> compare(const std::vector<Selection>& selections, std::uint32_t payload_bytes,
                                      const ProfileSet& profiles) {
  if (selections.size() < 2) {
    throw Error(ErrorKind::Usage, "select", "a comparison needs at least two selections");
  }
  std::vector<ResultRow> rows;
  for (const Selection& s : selections) {
    std::vector<double> rates;
    if (s.rate_mbps) {
      rates.push_back(*s.rate_mbps);
    } else {
      for (const RateMode& m : rate_modes(s.standard)) rates.push_back(m.rate_mbps);
    }
    for (double r : rates) {
      Question q;
      if (s.standard == Standard::Dot153) {
        q = Dot153Question{r, payload_bytes, s.policy};
      } else {
        Dot11Question d;
        d.standard = s.standard;
        d.rate_mbps = r;
        d.payload_bytes = payload_bytes;
        d.access_mode = s.access_mode;
        q = d;
      }
      rows.push_back(compute_point(q, profiles));
    }
  }
  return rows;
}

inline std::vector<ResultRow> compare(const std::vector<Selection>& selections, std::uint32_t payload_bytes) {
  return compare(selections, payload_bytes, ProfileSet{});
}

// ---------------------------------------------------------------------------
// Figure presets

inline constexpr std::uint32_t kFigurePayloadBytes = 1000;

// Rates beyond the standard ladders that expose the throughput asymptote.
inline constexpr std::array<double, 4> kAsymptoteRates = {100.0, 1000.0, 10000.0, 100000.0};

inline bool is_sweep_preset(std::string_view name) { return name == "fig2" || name == "fig3" || name == "fig4"; }
inline bool is_compare_preset(std::string_view name) { return name == "fig5" || name == "fig6"; }

// fig2: 802.15.3 throughput vs payload (100..2000 B) for every rate under
// Imm-ACK and Dly-ACK(5).
// fig3/fig4: 802.11a/b throughput vs rate, Basic and RTS/CTS, including
// hypothetical rates up to 100,000 Mbps.
// fig5/fig6: 802.15.3 vs 802.11a across their rate ladders.
inline std::vector<ResultRow> run_preset(std::string_view name, const ProfileSet& profiles) {
  std::vector<ResultRow> rows;
  const auto append = [&rows](std::vector<ResultRow> more) {
    rows.insert(rows.end(), more.begin(), more.end());
  };
  if (name == "fig2") {
    for (AckPolicy policy : {AckPolicy::imm(), AckPolicy::dly(5)}) {
      for (const RateMode& m : rate_modes(Standard::Dot153)) {
        SweepSpec spec{Dot153Question{m.rate_mbps, kFigurePayloadBytes, policy}, SweepVariable::PayloadBytes,
                       sweep_range(100, 2000, 100)};
        append(run_sweep(spec, profiles));
      }
    }
  } else if (name == "fig3" || name == "fig4") {
    const Standard standard = name == "fig3" ? Standard::Dot11a : Standard::Dot11b;
    for (AccessMode mode : {AccessMode::Basic, AccessMode::RtsCts}) {
      Dot11Question q;
      q.standard = standard;
      q.payload_bytes = kFigurePayloadBytes;
      q.access_mode = mode;
      q.allow_hypothetical_rate = true;
      SweepSpec spec{q, SweepVariable::RateMbps, {}};
      for (const RateMode& m : rate_modes(standard)) spec.values.push_back(m.rate_mbps);
      spec.values.insert(spec.values.end(), kAsymptoteRates.begin(), kAsymptoteRates.end());
      append(run_sweep(spec, profiles));
    }
  } else if (name == "fig5") {
    append(compare({parse_selection("dot153/imm_ack"), parse_selection("dot153/dly_ack:5"),
                    parse_selection("dot11a/basic"), parse_selection("dot11a/rts_cts")},
                   kFigurePayloadBytes, profiles));
  } else if (name == "fig6") {
    append(compare({parse_selection("dot153/imm_ack"), parse_selection("dot11a/basic")}, kFigurePayloadBytes,
                   profiles));
  } else {
    throw Error(ErrorKind::Usage, "preset", "'" + std::string(name) + "' (expected fig2..fig6)");
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Emission

enum class Format { Csv, Json, Plot, Table };

inline Format parse_format(std::string_view name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "plot") return Format::Plot;
  if (name == "table") return Format::Table;
  throw Error(ErrorKind::Usage, "format", "'" + std::string(name) + "' (expected csv, json, plot or table)");
}

inline std::optional<double> numeric_field(const ResultRow& r, std::string_view name) {
  if (name == "rate_mbps") return r.rate_mbps;
  if (name == "payload_bytes") return r.payload_bytes;
  if (name == "burst_n") return r.burst_n;
  if (name == "delay_us") return r.delay_us;
  if (name == "throughput_mbps") return r.throughput_mbps;
  if (name == "bandwidth_efficiency") return r.bandwidth_efficiency;
  return std::nullopt;
}

struct PlotColumns {
  std::string x;
  std::string y;
};

inline nlohmann::ordered_json to_json(const ResultRow& r) {
  nlohmann::ordered_json j;
  j["standard"] = r.standard;
  j["mode"] = r.mode;
  j["policy"] = r.policy;
  j["rate_mbps"] = r.rate_mbps;
  j["payload_bytes"] = r.payload_bytes;
  j["burst_n"] = r.burst_n;
  j["delay_us"] = r.delay_us;
  j["throughput_mbps"] = r.throughput_mbps;
  j["bandwidth_efficiency"] = r.bandwidth_efficiency;
  return j;
}

inline std::vector<ResultRow> parse_rows_json(std::string_view text) {
  std::vector<ResultRow> rows;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_array()) throw Error(ErrorKind::ParseError, "rows", "expected a JSON array");
    for (const auto& j : doc) {
      ResultRow r;
      j.at("standard").get_to(r.standard);
      j.at("mode").get_to(r.mode);
      j.at("policy").get_to(r.policy);
      j.at("rate_mbps").get_to(r.rate_mbps);
      j.at("payload_bytes").get_to(r.payload_bytes);
      j.at("burst_n").get_to(r.burst_n);
      j.at("delay_us").get_to(r.delay_us);
      j.at("throughput_mbps").get_to(r.throughput_mbps);
      j.at("bandwidth_efficiency").get_to(r.bandwidth_efficiency);
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, "rows", e.what());
  }
  return rows;
}

inline std::string emit(const std::vector<ResultRow>& rows, Format format, const PlotColumns& plot = {}) {
  if (rows.empty()) throw Error(ErrorKind::InvalidSweep, "rows", "nothing to emit");
  std::ostringstream out;
  using detail::format_value;
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < kRowFields.size(); ++i) out << (i ? "," : "") << kRowFields[i];
      out << '\n';
      for (const ResultRow& r : rows) {
        out << r.standard << ',' << r.mode << ',' << r.policy << ',' << format_value(r.rate_mbps) << ','
            << r.payload_bytes << ',' << r.burst_n << ',' << format_value(r.delay_us) << ','
            << format_value(r.throughput_mbps) << ',' << format_value(r.bandwidth_efficiency) << '\n';
      }
      break;
    }
    case Format::Json: {
      nlohmann::ordered_json doc = nlohmann::ordered_json::array();
      for (const ResultRow& r : rows) doc.push_back(to_json(r));
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::Plot: {
      if (!numeric_field(rows.front(), plot.x) || !numeric_field(rows.front(), plot.y)) {
        throw Error(ErrorKind::Usage, "x/y", "plot needs --x and --y naming numeric row fields");
      }
      for (const ResultRow& r : rows) {
        out << format_value(*numeric_field(r, plot.x)) << ' ' << format_value(*numeric_field(r, plot.y)) << '\n';
      }
      break;
    }
    case Format::Table: {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%-8s %-8s %-8s %10s %8s %6s %12s %12s %8s\n", "standard", "mode", "policy",
                    "rate_mbps", "payload", "burst", "delay_us", "tput_mbps", "eff");
      out << buf;
      for (const ResultRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%-8s %-8s %-8s %10.2f %8u %6u %12.2f %12.2f %8.2f\n", r.standard.c_str(),
                      r.mode.c_str(), r.policy.c_str(), r.rate_mbps, r.payload_bytes, r.burst_n, r.delay_us,
                      r.throughput_mbps, r.bandwidth_efficiency);
        out << buf;
      }
      break;
    }
  }
  return out.str();
}

}  // namespace macthru
