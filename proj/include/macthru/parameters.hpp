#pragma once

// Named access to profile fields and the parameter-override file.
//
// An override file is a flat JSON object keyed by "<standard>.<field>",
// e.g. {"dot11a.t_sifs": 16, "dot153.t_mifs": 2.5}. A key is accepted only
// if the field exists for that standard's default profile.

#include <cmath>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "macthru/error.hpp"
#include "macthru/timing_model.hpp"

namespace macthru {

struct ProfileField {
  std::string_view name;
  std::variant<double StandardProfile::*, std::optional<double> StandardProfile::*,
               std::optional<int> StandardProfile::*>
      member;
  bool strictly_positive = false;
};

inline constexpr std::array<ProfileField, 18> kProfileFields = {{
    {"t_phy", &StandardProfile::t_phy},
    {"t_preamble", &StandardProfile::t_preamble},
    {"t_sifs", &StandardProfile::t_sifs},
    {"t_difs", &StandardProfile::t_difs},
    {"t_mifs", &StandardProfile::t_mifs},
    {"cw_min_slots", &StandardProfile::cw_min_slots},
    {"slot_time", &StandardProfile::slot_time},
    {"propagation_delay", &StandardProfile::propagation_delay},
    {"t_symbol", &StandardProfile::t_symbol, true},
    {"mac_header_bytes", &StandardProfile::mac_header_bytes},
    {"t_mac_header", &StandardProfile::t_mac_header},
    {"t_hcs", &StandardProfile::t_hcs},
    {"control_rate_mbps", &StandardProfile::control_rate_mbps, true},
    {"rts_bytes", &StandardProfile::rts_bytes},
    {"cts_bytes", &StandardProfile::cts_bytes},
    {"ack_bytes", &StandardProfile::ack_bytes},
    {"fcs_bytes", &StandardProfile::fcs_bytes},
    {"base_symbol_rate_msps", &StandardProfile::base_symbol_rate_msps, true},
}};

inline std::optional<double> field_value(const StandardProfile& p, const ProfileField& f) {
  return std::visit(
      [&p](auto member) -> std::optional<double> {
        const auto& v = p.*member;
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
          return v;
        } else {
          if (!v) return std::nullopt;
          return static_cast<double>(*v);
        }
      },
      f.member);
}

// Fields defined for this profile, in registry order.
inline std::vector<std::pair<std::string, double>> profile_values(const StandardProfile& p) {
  std::vector<std::pair<std::string, double>> out;
  for (const ProfileField& f : kProfileFields) {
    if (auto v = field_value(p, f)) out.emplace_back(std::string(f.name), *v);
  }
  return out;
}

inline void apply_override(ProfileSet& set, std::string_view key, double value) {
  const auto dot = key.find('.');
  if (dot == std::string_view::npos) {
    throw Error(ErrorKind::UnknownOverride, std::string(key), "expected <standard>.<field>");
  }
  Standard standard{};
  try {
    standard = parse_standard(key.substr(0, dot));
  } catch (const Error&) {
    throw Error(ErrorKind::UnknownOverride, std::string(key), "unknown standard");
  }
  const std::string_view name = key.substr(dot + 1);
  const StandardProfile defaults = profile(standard);
  for (const ProfileField& f : kProfileFields) {
    if (f.name != name) continue;
    if (!field_value(defaults, f)) {
      throw Error(ErrorKind::UnknownOverride, std::string(key),
                  "field is not defined for this standard");
    }
    if (!std::isfinite(value) || value < 0.0 || (f.strictly_positive && value == 0.0)) {
      throw Error(ErrorKind::InvalidOverride, std::string(key),
                  f.strictly_positive ? "must be positive and finite"
                                      : "must be non-negative and finite");
    }
    StandardProfile& target = set.get(standard);
    std::visit(
        [&](auto member) {
          auto& slot = target.*member;
          using Slot = std::decay_t<decltype(slot)>;
          if constexpr (std::is_same_v<Slot, std::optional<int>>) {
            if (value != std::floor(value) || value > 1.0e9) {
              throw Error(ErrorKind::InvalidOverride, std::string(key), "must be an integer");
            }
            slot = static_cast<int>(value);
          } else {
            slot = value;
          }
        },
        f.member);
    return;
  }
  throw Error(ErrorKind::UnknownOverride, std::string(key), "no such field");
}

inline void apply_overrides(ProfileSet& set, const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorKind::InvalidOverride, "override", "override document must be a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) {
      throw Error(ErrorKind::InvalidOverride, key, "value must be numeric");
    }
    apply_override(set, key, value.get<double>());
  }
}

inline ProfileSet load_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidOverride, "override", "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "override", e.what());
  }
  ProfileSet set;
  apply_overrides(set, doc);
  return set;
}

}  // namespace macthru
