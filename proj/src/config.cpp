#include "rltrc/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "rltrc/errors.hpp"

namespace rltrc {

std::string_view to_string(MobilityModel m) noexcept {
  switch (m) {
    case MobilityModel::RandomWaypoint: return "random-waypoint";
    case MobilityModel::RandomWalk: return "random-walk";
    case MobilityModel::Gaussian: return "gaussian";
  }
  return "unknown";
}

namespace {

using Member = std::variant<int ScenarioConfig::*, double ScenarioConfig::*, bool ScenarioConfig::*,
                            std::uint64_t ScenarioConfig::*, MobilityModel ScenarioConfig::*,
                            PolicyKind ScenarioConfig::*>;

struct Field {
  std::string_view key;
  Member member;
};

using C = ScenarioConfig;

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"zones", &C::zones},
      {"nodes", &C::nodes},
      {"arena_width", &C::arena_width},
      {"arena_height", &C::arena_height},
      {"min_nodes_per_zone", &C::min_nodes_per_zone},
      {"max_nodes_per_zone", &C::max_nodes_per_zone},
      {"peripherals_per_boundary", &C::peripherals_per_boundary},
      {"radio_range_min", &C::radio_range_min},
      {"radio_range_max", &C::radio_range_max},
      {"initial_energy_min", &C::initial_energy_min},
      {"initial_energy_max", &C::initial_energy_max},
      {"power_levels_min", &C::power_levels_min},
      {"power_levels_max", &C::power_levels_max},
      {"min_rcv", &C::min_rcv},
      {"power_unit_watts", &C::power_unit_watts},
      {"alpha_min", &C::alpha_min},
      {"alpha_max", &C::alpha_max},
      {"noise_sd", &C::noise_sd},
      {"signal_speed", &C::signal_speed},
      {"prior_attenuation", &C::prior_attenuation},
      {"sessions", &C::sessions},
      {"session_duration", &C::session_duration},
      {"session_gap", &C::session_gap},
      {"inter_arrival_min_ms", &C::inter_arrival_min_ms},
      {"inter_arrival_max_ms", &C::inter_arrival_max_ms},
      {"inter_arrival_mean_ms", &C::inter_arrival_mean_ms},
      {"payload_bytes", &C::payload_bytes},
      {"header_bytes", &C::header_bytes},
      {"ack_bytes", &C::ack_bytes},
      {"control_bytes", &C::control_bytes},
      {"bitrate", &C::bitrate},
      {"ack_cost_fraction", &C::ack_cost_fraction},
      {"mx_atmpt", &C::mx_atmpt},
      {"tau_a", &C::tau_a},
      {"max_hops", &C::max_hops},
      {"t_sync", &C::t_sync},
      {"t_net", &C::t_net},
      {"hop_latency", &C::hop_latency},
      {"broadcast_cap", &C::broadcast_cap},
      {"cache_ttl", &C::cache_ttl},
      {"mobility", &C::mobility},
      {"speed_min", &C::speed_min},
      {"speed_max", &C::speed_max},
      {"pause_max", &C::pause_max},
      {"mobility_dt", &C::mobility_dt},
      {"gauss_sd", &C::gauss_sd},
      {"policy", &C::policy},
      {"beacon_interval", &C::beacon_interval},
      {"rssi_high_margin", &C::rssi_high_margin},
      {"rssi_low_margin", &C::rssi_low_margin},
      {"prr_target", &C::prr_target},
      {"seed", &C::seed},
      {"duration", &C::duration},
      {"window", &C::window},
      {"override_ranges", &C::override_ranges},
  };
  return table;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
bool parse_number(std::string_view v, T& out) {
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::optional<MobilityModel> parse_mobility(std::string_view v) {
  for (auto m : {MobilityModel::RandomWaypoint, MobilityModel::RandomWalk, MobilityModel::Gaussian}) {
    if (to_string(m) == v) return m;
  }
  return std::nullopt;
}

std::string render(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Shared edges between grid cells, matching make_zone_grid's layout.
int shared_boundaries(int zones) {
  if (zones < 1) return 0;
  int rows = 1;
  for (int r = 1; r * r <= zones; ++r) {
    if (zones % r == 0) rows = r;
  }
  const int cols = zones / rows;
  return rows * (cols - 1) + cols * (rows - 1);
}

}  // namespace

bool apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value, std::string& error) {
  for (const auto& f : fields()) {
    if (f.key != key) continue;
    bool ok = std::visit(
        [&](auto member) -> bool {
          using T = std::remove_cvref_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<T, bool>) {
            if (value == "true" || value == "1") cfg.*member = true;
            else if (value == "false" || value == "0") cfg.*member = false;
            else return false;
            return true;
          } else if constexpr (std::is_same_v<T, MobilityModel>) {
            auto m = parse_mobility(value);
            if (m) cfg.*member = *m;
            return m.has_value();
          } else if constexpr (std::is_same_v<T, PolicyKind>) {
            auto p = parse_policy(value);
            if (p) cfg.*member = *p;
            return p.has_value();
          } else {
            T parsed{};
            if (!parse_number(value, parsed)) return false;
            cfg.*member = parsed;
            return true;
          }
        },
        f.member);
    if (!ok) error = std::string(key) + ": cannot parse '" + std::string(value) + "'";
    return ok;
  }
  error = "unknown key '" + std::string(key) + "'";
  return false;
}

std::vector<std::string> validate(const ScenarioConfig& c) {
  std::vector<std::string> v;
  auto need = [&](bool ok, std::string msg) {
    if (!ok) v.push_back(std::move(msg));
  };

  // structural, always enforced
  need(c.zones >= 1, "zones: must be at least 1");
  need(c.nodes >= 1, "nodes: must be at least 1");
  need(c.arena_width > 0 && c.arena_height > 0, "arena_width/arena_height: must be positive");
  need(c.min_nodes_per_zone >= 0 && c.min_nodes_per_zone <= c.max_nodes_per_zone,
       "min_nodes_per_zone: must lie in [0, max_nodes_per_zone]");
  need(c.nodes <= static_cast<long long>(c.zones) * c.max_nodes_per_zone,
       "nodes: " + std::to_string(c.nodes) + " exceeds zones x max_nodes_per_zone = " +
           std::to_string(static_cast<long long>(c.zones) * c.max_nodes_per_zone));
  need(c.nodes >= static_cast<long long>(c.zones) * c.min_nodes_per_zone,
       "nodes: fewer than zones x min_nodes_per_zone");
  need(c.peripherals_per_boundary >= 0, "peripherals_per_boundary: must be non-negative");
  need(static_cast<long long>(shared_boundaries(c.zones)) * c.peripherals_per_boundary < c.nodes,
       "peripherals_per_boundary: peripheral count must leave at least one mobile node");
  need(c.radio_range_min > 0 && c.radio_range_min <= c.radio_range_max,
       "radio_range_min/max: need 0 < min <= max");
  need(c.initial_energy_min > 0 && c.initial_energy_min <= c.initial_energy_max,
       "initial_energy_min/max: need 0 < min <= max");
  need(c.power_levels_min >= 1 && c.power_levels_min <= c.power_levels_max,
       "power_levels_min/max: need 1 <= min <= max");
  need(c.min_rcv > 0, "min_rcv: must be positive");
  need(c.power_unit_watts > 0, "power_unit_watts: must be positive");
  need(c.alpha_min > 0 && c.alpha_min <= c.alpha_max, "alpha_min/max: need 0 < min <= max");
  need(c.noise_sd >= 0, "noise_sd: must be non-negative");
  need(c.signal_speed > 0, "signal_speed: must be positive");
  need(c.prior_attenuation > 0, "prior_attenuation: must be positive");
  need(c.sessions >= 0, "sessions: must be non-negative");
  need(c.session_duration > 0, "session_duration: must be positive");
  need(c.session_gap >= 0, "session_gap: must be non-negative");
  need(c.inter_arrival_min_ms > 0 && c.inter_arrival_min_ms <= c.inter_arrival_max_ms,
       "inter_arrival_min_ms/max_ms: need 0 < min <= max");
  need(c.inter_arrival_mean_ms > 0, "inter_arrival_mean_ms: must be positive");
  need(c.payload_bytes > 0 && c.header_bytes >= 0 && c.ack_bytes > 0 && c.control_bytes > 0,
       "payload_bytes/header_bytes/ack_bytes/control_bytes: must be positive");
  need(c.bitrate > 0, "bitrate: must be positive");
  need(c.ack_cost_fraction >= 0, "ack_cost_fraction: must be non-negative");
  need(c.mx_atmpt >= 1, "mx_atmpt: must be at least 1");
  need(c.tau_a > 0, "tau_a: must be positive");
  need(c.max_hops >= 1, "max_hops: must be at least 1");
  need(c.t_sync > 0, "t_sync: must be positive");
  need(c.t_net >= c.t_sync, "t_net: must be at least t_sync");
  need(c.hop_latency >= 0, "hop_latency: must be non-negative");
  need(c.broadcast_cap > 0, "broadcast_cap: must be positive");
  need(c.cache_ttl > 0, "cache_ttl: must be positive");
  need(c.speed_min >= 0 && c.speed_min <= c.speed_max, "speed_min/max: need 0 <= min <= max");
  need(c.pause_max >= 0, "pause_max: must be non-negative");
  need(c.mobility_dt > 0, "mobility_dt: must be positive");
  need(c.gauss_sd >= 0, "gauss_sd: must be non-negative");
  need(c.beacon_interval > 0, "beacon_interval: must be positive");
  need(c.prr_target >= 0 && c.prr_target <= 1, "prr_target: must lie in [0,1]");
  need(c.duration >= 0, "duration: must be non-negative");
  need(c.window > 0, "window: must be positive");

  if (c.override_ranges) return v;

  // parameter table ranges
  need(c.zones == 3 || c.zones == 6 || c.zones == 9 || c.zones == 12, "zones: must be one of 3, 6, 9, 12");
  need(c.nodes >= 100 && c.nodes <= 500, "nodes: must lie in [100, 500]");
  need(c.arena_width == 2000.0, "arena_width: must be 2000 m");
  need(c.arena_height == 2000.0, "arena_height: must be 2000 m");
  need(c.min_nodes_per_zone >= 5, "min_nodes_per_zone: must be at least 5");
  need(c.max_nodes_per_zone <= 150, "max_nodes_per_zone: must be at most 150");
  need(c.radio_range_min >= 10.0, "radio_range_min: must be at least 10 m");
  need(c.radio_range_max <= 40.0, "radio_range_max: must be at most 40 m");
  need(c.initial_energy_min >= 20.0, "initial_energy_min: must be at least 20 J");
  need(c.initial_energy_max <= 50.0, "initial_energy_max: must be at most 50 J");
  need(c.power_levels_max <= 25, "power_levels_max: must be at most 25");
  need(c.inter_arrival_min_ms >= 50.0, "inter_arrival_min_ms: must be at least 50 ms");
  need(c.inter_arrival_max_ms <= 200.0, "inter_arrival_max_ms: must be at most 200 ms");
  need(c.mx_atmpt <= 4, "mx_atmpt: must be at most 4");
  return v;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::vector<std::string> problems;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      problems.push_back(where + "expected key = value");
      continue;
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      problems.push_back(where + "duplicate key '" + std::string(key) + "'");
      continue;
    }
    std::string err;
    if (!apply_setting(cfg, key, value, err)) problems.push_back(where + err);
  }
  auto more = validate(cfg);
  problems.insert(problems.end(), more.begin(), more.end());
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    std::visit(
        [&](auto member) {
          using T = std::remove_cvref_t<decltype(cfg.*member)>;
          if constexpr (std::is_same_v<T, bool>) out += cfg.*member ? "true" : "false";
          else if constexpr (std::is_same_v<T, double>) out += render(cfg.*member);
          else if constexpr (std::is_same_v<T, MobilityModel> || std::is_same_v<T, PolicyKind>)
            out += to_string(cfg.*member);
          else out += std::to_string(cfg.*member);
        },
        f.member);
    out += '\n';
  }
  return out;
}

}  // namespace rltrc
