#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rltrc/config.hpp"
#include "rltrc/sim/engine.hpp"

namespace rltrc {

// A named, seed-pinned experiment.
struct Scenario {
  std::string name;
  std::string description;
  ScenarioConfig config;
  std::optional<sim::Topology> topology;
};

// Small arena with the full protocol stack; density is kept high enough for
// multi-hop routes to exist at 10-40 m radio ranges.
ScenarioConfig desk_scale(int nodes, int zones, double duration);

std::vector<Scenario> scenario_suite();
std::optional<Scenario> find_scenario(std::string_view name);

}  // namespace rltrc
