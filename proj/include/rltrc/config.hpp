#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rltrc/policy.hpp"

namespace rltrc {

enum class MobilityModel { RandomWaypoint, RandomWalk, Gaussian };

std::string_view to_string(MobilityModel m) noexcept;

// Scenario parameters. Table-1 style ranges are enforced unless
// override_ranges is set; structural constraints are always enforced.
struct ScenarioConfig {
  // topology
  int zones = 3;
  int nodes = 100;
  double arena_width = 2000.0;
  double arena_height = 2000.0;
  int min_nodes_per_zone = 5;
  int max_nodes_per_zone = 150;
  int peripherals_per_boundary = 4;

  // radios
  double radio_range_min = 10.0;
  double radio_range_max = 40.0;
  double initial_energy_min = 20.0;
  double initial_energy_max = 50.0;
  int power_levels_min = 8;
  int power_levels_max = 16;
  double min_rcv = 1.0;
  double power_unit_watts = 1e-3;

  // channel
  double alpha_min = 1.0;
  double alpha_max = 2.0;
  double noise_sd = 0.2;
  double signal_speed = 4000.0;
  double prior_attenuation = 1.5;

  // traffic
  int sessions = 10;
  double session_duration = 60.0;
  double session_gap = 1.0;
  double inter_arrival_min_ms = 50.0;
  double inter_arrival_max_ms = 200.0;
  double inter_arrival_mean_ms = 100.0;
  int payload_bytes = 50;
  int header_bytes = 11;
  int ack_bytes = 11;
  int control_bytes = 24;
  double bitrate = 250000.0;
  double ack_cost_fraction = 0.5;

  // protocol
  int mx_atmpt = 3;
  double tau_a = 0.05;
  int max_hops = 30;
  double t_sync = 5.0;
  double t_net = 20.0;
  double hop_latency = 0.005;
  double broadcast_cap = 1e12;
  double cache_ttl = 30.0;

  // mobility
  MobilityModel mobility = MobilityModel::RandomWaypoint;
  double speed_min = 0.5;
  double speed_max = 2.0;
  double pause_max = 10.0;
  double mobility_dt = 0.5;
  double gauss_sd = 0.5;

  // baselines
  PolicyKind policy = PolicyKind::RlTrc;
  double beacon_interval = 1.0;
  double rssi_high_margin = 10.0;
  double rssi_low_margin = 3.0;
  double prr_target = 0.9;

  // run
  std::uint64_t seed = 1;
  double duration = 300.0;
  double window = 15.0;
  bool override_ranges = false;

  double data_airtime() const noexcept { return (payload_bytes + header_bytes) * 8.0 / bitrate; }
  double ack_airtime() const noexcept { return ack_bytes * 8.0 / bitrate; }
  double control_airtime() const noexcept { return control_bytes * 8.0 / bitrate; }
};

// Every violated constraint, phrased with the field name and its bound.
std::vector<std::string> validate(const ScenarioConfig& cfg);

// Parses flat `key = value` lines (# starts a comment) over the defaults and
// validates. Throws ConfigError listing every problem.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

// Applies one key/value pair; returns false for an unknown key or bad value.
bool apply_setting(ScenarioConfig& cfg, std::string_view key, std::string_view value, std::string& error);

// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ScenarioConfig& cfg);

}  // namespace rltrc
