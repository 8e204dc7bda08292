#include "rltrc/scenarios.hpp"

#include <cmath>

namespace rltrc {

ScenarioConfig desk_scale(int nodes, int zones, double duration) {
  ScenarioConfig c;
  c.override_ranges = true;
  c.nodes = nodes;
  c.zones = zones;
  // about 1 node per 225 m^2
  const double side = std::round(std::sqrt(225.0 * nodes));
  c.arena_width = side;
  c.arena_height = side;
  c.min_nodes_per_zone = 1;
  c.max_nodes_per_zone = nodes;
  c.radio_range_min = 20.0;
  c.radio_range_max = 40.0;
  c.peripherals_per_boundary = 6;
  c.sessions = 6;
  c.session_duration = 40.0;
  c.duration = duration;
  c.window = duration / 20.0;
  return c;
}

namespace {

Scenario two_node_static() {
  Scenario s;
  s.name = "two-node-static";
  s.description = "two static nodes 10 m apart in one zone, noiseless channel, 10 packets";
  ScenarioConfig& c = s.config;
  c.override_ranges = true;
  c.zones = 1;
  c.nodes = 2;
  c.arena_width = 100.0;
  c.arena_height = 100.0;
  c.min_nodes_per_zone = 1;
  c.peripherals_per_boundary = 0;
  c.noise_sd = 0.0;
  c.policy = PolicyKind::FixedMax;
  c.duration = 10.0;
  c.window = 1.0;
  sim::Topology t;
  t.nodes = {sim::NodeSpec{{40.0, 50.0}, 20.0, 30.0, 8, false, 0.0},
             sim::NodeSpec{{50.0, 50.0}, 20.0, 30.0, 8, false, 0.0}};
  t.sessions = {sim::SessionSpec{make_id<NodeId>(0), make_id<NodeId>(1), 0.0, 5.0, 10}};
  t.alpha = 1.5;
  s.topology = t;
  return s;
}

Scenario line_three() {
  Scenario s;
  s.name = "line-3";
  s.description = "three static nodes in a row, ranges cover adjacent pairs only";
  ScenarioConfig& c = s.config;
  c.override_ranges = true;
  c.zones = 1;
  c.nodes = 3;
  c.arena_width = 100.0;
  c.arena_height = 100.0;
  c.min_nodes_per_zone = 1;
  c.peripherals_per_boundary = 0;
  c.noise_sd = 0.0;
  c.duration = 20.0;
  c.window = 2.0;
  sim::Topology t;
  t.nodes = {sim::NodeSpec{{20.0, 50.0}, 20.0, 30.0, 8, false, 0.0},
             sim::NodeSpec{{35.0, 50.0}, 20.0, 30.0, 8, false, 0.0},
             sim::NodeSpec{{50.0, 50.0}, 20.0, 30.0, 8, false, 0.0}};
  t.sessions = {sim::SessionSpec{make_id<NodeId>(0), make_id<NodeId>(2), 0.0, 15.0, 0}};
  t.alpha = 1.5;
  s.topology = t;
  return s;
}

}  // namespace

std::vector<Scenario> scenario_suite() {
  std::vector<Scenario> out;
  out.push_back(two_node_static());
  out.push_back(line_three());

  Scenario cons{"conservation-50", "50 nodes, 3 zones, 60 s, random waypoint", desk_scale(50, 3, 60.0), {}};
  out.push_back(cons);

  Scenario conv{"convergence-100", "100 nodes, 3 zones, 300 s, random waypoint", desk_scale(100, 3, 300.0), {}};
  out.push_back(conv);

  Scenario walk{"walk-100", "100 nodes, 3 zones, 120 s, random walk", desk_scale(100, 3, 120.0), {}};
  walk.config.mobility = MobilityModel::RandomWalk;
  out.push_back(walk);

  Scenario gauss{"gauss-100", "100 nodes, 6 zones, 120 s, gaussian mobility", desk_scale(100, 6, 120.0), {}};
  gauss.config.mobility = MobilityModel::Gaussian;
  out.push_back(gauss);
  return out;
}

std::optional<Scenario> find_scenario(std::string_view name) {
  for (auto& s : scenario_suite()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace rltrc
