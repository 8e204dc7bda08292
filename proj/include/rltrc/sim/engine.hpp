#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rltrc/config.hpp"
#include "rltrc/geometry.hpp"
#include "rltrc/ids.hpp"
#include "rltrc/ledger.hpp"
#include "rltrc/metrics.hpp"
#include "rltrc/rewards.hpp"

namespace rltrc::sim {

// Hand-placed node, used instead of random generation.
struct NodeSpec {
  Vec2 position{};
  double radio_range = 20.0;
  double initial_energy = 30.0;
  int levels = 8;
  bool peripheral = false;
  double max_velocity = 0.0;
};

struct SessionSpec {
  NodeId src{};
  NodeId dst{};
  double start = 0.0;
  double end = 0.0;
  std::uint64_t packet_limit = 0;  // 0 = unlimited
};

// Explicit world. Zones still come from the config grid; node ids follow
// the order of `nodes`.
struct Topology {
  std::vector<NodeSpec> nodes;
  std::vector<SessionSpec> sessions;
  std::optional<double> alpha;  // one attenuation for every link
};

struct RunResult {
  MetricsReport report;
  MetricsLedger ledger;
  std::vector<Waste> zone_waste;  // incremental (ew, et) per zone
  std::map<std::string, std::uint64_t> event_counts;
  std::vector<std::string> audit_failures;
  std::uint64_t trace_digest = 0;  // FNV-1a over the popped event order
  std::uint64_t route_discoveries = 0;
  std::uint64_t link_failures = 0;
  std::uint64_t predicted_breaks = 0;  // hops abandoned by the displacement test
  std::uint64_t shrunk_out = 0;        // hops with no level above the threshold
  std::uint64_t sessions_started = 0;
  std::uint64_t sessions_failed = 0;
  double mean_sigma = 0.0;  // over RL-TRC power decisions
  std::uint64_t held_at_end = 0;  // packets still queued or travelling when the run stops
};

// Validates, then simulates [0, cfg.duration). Throws ConfigError on an
// invalid config before any event fires.
RunResult simulate(const ScenarioConfig& cfg, const Topology* topology = nullptr);

// Convenience: the report of simulate() with the given seed.
MetricsReport run(ScenarioConfig cfg, std::uint64_t seed);

}  // namespace rltrc::sim
