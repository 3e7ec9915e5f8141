// macthru: closed-form MAC throughput for 802.11a/b and 802.15.3.
//
//   macthru compute --standard dot11a --rate 54 --payload 1000 --mode rts_cts
//   macthru sweep --preset fig2 --format csv
//   macthru compare --select dot153@55/imm_ack --select dot11a@54/basic
//   macthru params --format json
//
// Exit codes: 0 success, 1 computation/validation error, 2 usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "macthru/dot11.hpp"
#include "macthru/dot153.hpp"
#include "macthru/error.hpp"
#include "macthru/parameters.hpp"
#include "macthru/report.hpp"
#include "macthru/timeline.hpp"
#include "macthru/timing_model.hpp"

namespace {

using namespace macthru;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string override_file;
  bool trace = false;
  bool allow_hypothetical_rate = false;
  std::string format = "table";
  std::string plot_x;
  std::string plot_y;
};

struct QuestionOptions {
  std::string standard;
  std::optional<double> rate;
  std::uint32_t payload = kFigurePayloadBytes;
  std::string mode = "basic";
  std::string policy = "imm_ack";
  std::uint32_t burst = 1;
  bool allow_zero_payload = false;
  std::uint32_t max_payload = kDefaultMaxMsduBytes;
};

void add_question_options(CLI::App* cmd, QuestionOptions& q) {
  cmd->add_option("--standard", q.standard, "dot11a, dot11b or dot153");
  cmd->add_option("--rate", q.rate, "Data rate in Mbps");
  cmd->add_option("--payload", q.payload, "MSDU payload in bytes")->capture_default_str();
  cmd->add_option("--mode", q.mode, "802.11 access mode: basic or rts_cts")->capture_default_str();
  cmd->add_option("--policy", q.policy, "802.15.3 ACK policy: imm_ack, dly_ack or no_ack")->capture_default_str();
  cmd->add_option("--burst", q.burst, "Frames per Dly-ACK burst")->capture_default_str();
  cmd->add_option("--max-payload", q.max_payload, "802.11 MSDU size limit in bytes")->capture_default_str();
  cmd->add_flag("--allow-zero-payload", q.allow_zero_payload, "Accept a 0-byte payload (throughput 0)");
}

Question make_question(const QuestionOptions& o, const GlobalOptions& g, bool rate_required) {
  if (o.standard.empty()) throw Error(ErrorKind::Usage, "standard", "--standard is required");
  const Standard standard = parse_standard(o.standard);
  if (rate_required && !o.rate) throw Error(ErrorKind::Usage, "rate", "--rate is required");
  const double rate = o.rate.value_or(rate_modes(standard).back().rate_mbps);
  if (standard == Standard::Dot153) {
    Dot153Question q;
    q.rate_mbps = rate;
    q.payload_bytes = o.payload;
    q.policy = {parse_ack_policy(o.policy), o.burst};
    if (q.policy.kind != AckPolicyKind::DlyAck) q.policy.burst = 1;
    q.allow_zero_payload = o.allow_zero_payload;
    return q;
  }
  Dot11Question q;
  q.standard = standard;
  q.rate_mbps = rate;
  q.payload_bytes = o.payload;
  q.access_mode = parse_access_mode(o.mode);
  q.allow_hypothetical_rate = g.allow_hypothetical_rate;
  q.allow_zero_payload = o.allow_zero_payload;
  q.max_payload_bytes = o.max_payload;
  return q;
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(detail::parse_number(item, list));
  return out;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(detail::parse_number(item, text));
  if (parts.size() != 3) throw Error(ErrorKind::Usage, "range", "expected start:stop:step");
  return sweep_range(parts[0], parts[1], parts[2]);
}

void print_rows(const std::vector<ResultRow>& rows, const GlobalOptions& g) {
  std::cout << emit(rows, parse_format(g.format), {g.plot_x, g.plot_y});
}

void print_params(const ProfileSet& profiles, const std::string& standard, const GlobalOptions& g) {
  std::vector<Standard> which;
  if (standard.empty()) {
    which.assign(kAllStandards.begin(), kAllStandards.end());
  } else {
    which.push_back(parse_standard(standard));
  }
  if (g.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (Standard s : which) {
      for (const auto& [name, value] : profile_values(profiles.get(s))) {
        doc[std::string(to_string(s)) + "." + name] = value;
      }
    }
    std::cout << doc.dump(2) << '\n';
    return;
  }
  if (g.format != "table" && g.format != "csv") {
    throw Error(ErrorKind::Usage, "format", "params supports table, csv or json");
  }
  const char sep = g.format == "csv" ? ',' : '\t';
  if (g.format == "csv") std::cout << "key,value\n";
  for (Standard s : which) {
    for (const auto& [name, value] : profile_values(profiles.get(s))) {
      std::cout << to_string(s) << '.' << name << sep << detail::format_value(value) << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MAC-layer maximum throughput for IEEE 802.11a/b and 802.15.3"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--override", g.override_file, "JSON file of <standard>.<field> parameter overrides");
  app.add_flag("--trace", g.trace, "Print the frame-exchange timeline (compute only)");
  app.add_flag("--allow-hypothetical-rate", g.allow_hypothetical_rate,
               "Accept 802.11 rates outside the standard rate set");
  app.add_option("--format", g.format, "csv, json, plot or table")->capture_default_str();
  app.add_option("--x", g.plot_x, "Plot x column (row field name)");
  app.add_option("--y", g.plot_y, "Plot y column (row field name)");

  QuestionOptions compute_q;
  auto* compute = app.add_subcommand("compute", "Compute a single operating point");
  add_question_options(compute, compute_q);

  QuestionOptions sweep_q;
  std::string sweep_var = "payload_bytes";
  std::string sweep_values;
  std::string sweep_range_text;
  std::string sweep_preset;
  auto* sweep = app.add_subcommand("sweep", "Sweep payload, rate or burst length");
  add_question_options(sweep, sweep_q);
  sweep->add_option("--var", sweep_var, "payload_bytes, rate_mbps or burst_n")->capture_default_str();
  sweep->add_option("--values", sweep_values, "Comma-separated sweep values");
  sweep->add_option("--range", sweep_range_text, "start:stop:step (inclusive)");
  sweep->add_option("--preset", sweep_preset, "Figure preset: fig2, fig3 or fig4");

  std::vector<std::string> selections;
  std::uint32_t compare_payload = kFigurePayloadBytes;
  std::string compare_preset;
  auto* cmp = app.add_subcommand("compare", "Compare standards across their rate ladders");
  cmp->add_option("--select", selections, "<standard>[@rate][/mode|policy[:burst]], repeatable");
  cmp->add_option("--payload", compare_payload, "MSDU payload in bytes")->capture_default_str();
  cmp->add_option("--preset", compare_preset, "Figure preset: fig5 or fig6");

  std::string params_standard;
  auto* params = app.add_subcommand("params", "Print the active timing parameters");
  params->add_option("--standard", params_standard, "Restrict to one standard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const ProfileSet profiles = g.override_file.empty() ? ProfileSet{} : load_overrides(g.override_file);

    if (compute->parsed()) {
      const Question q = make_question(compute_q, g, true);
      const ResultRow row = compute_point(q, profiles);
      if (g.trace) {
        render_trace(std::cout, build_timeline(q, profiles));
        std::cout << '\n';
      }
      print_rows({row}, g);
    } else if (sweep->parsed()) {
      if (!sweep_preset.empty()) {
        if (!is_sweep_preset(sweep_preset)) {
          throw Error(ErrorKind::Usage, "preset", "'" + sweep_preset + "' is not a sweep preset (fig2..fig4)");
        }
        print_rows(run_preset(sweep_preset, profiles), g);
      } else {
        SweepSpec spec;
        spec.variable = parse_sweep_variable(sweep_var);
        spec.base = make_question(sweep_q, g, spec.variable != SweepVariable::RateMbps);
        if (!sweep_values.empty() == !sweep_range_text.empty()) {
          throw Error(ErrorKind::Usage, "values", "give exactly one of --values or --range");
        }
        spec.values = sweep_values.empty() ? parse_range(sweep_range_text) : parse_values(sweep_values);
        print_rows(run_sweep(spec, profiles), g);
      }
    } else if (cmp->parsed()) {
      if (!compare_preset.empty()) {
        if (!is_compare_preset(compare_preset)) {
          throw Error(ErrorKind::Usage, "preset", "'" + compare_preset + "' is not a compare preset (fig5, fig6)");
        }
        print_rows(run_preset(compare_preset, profiles), g);
      } else {
        std::vector<Selection> parsed;
        for (const auto& s : selections) parsed.push_back(parse_selection(s));
        print_rows(compare(parsed, compare_payload, profiles), g);
      }
    } else if (params->parsed()) {
      print_params(profiles, params_standard, g);
    }
  } catch (const Error& e) {
    std::cerr << "macthru: " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? kExitUsage : kExitError;
  }
  return 0;
}
