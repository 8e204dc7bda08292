#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rltrc/core_model.hpp"
#include "rltrc/geometry.hpp"
#include "rltrc/ids.hpp"

namespace rltrc {

struct RegistryEntry {
  Vec2 position{};
  double timestamp = 0.0;
  double residual_energy = 0.0;
  double max_velocity = 0.0;
};

struct ControllerRegistry {
  std::map<NodeId, RegistryEntry> nodes;
  Rect zone_geometry{};
  double t_sync = 5.0;
};

struct BroadcastCircle {
  Vec2 center{};
  double radius = 0.0;
  std::vector<ZoneId> spans_zones;
  bool intra_zonal = false;
  bool all_zones = false;  // destination unknown: flood everything
};

// Circle bounding where the destination can be now, given its last report.
// A destination missing from every registry yields the all-zones sentinel.
BroadcastCircle destination_lookup(NodeId dst, double t_now, std::span<const ControllerRegistry> registries,
                                   std::span<const ZoneState> zones);

// What a zone controller learns about one member at sync time.
struct MemberReport {
  NodeId id{};
  Vec2 position{};
  double residual_energy = 0.0;
  double max_velocity = 0.0;
  double radio_range = 0.0;
  double neighbor_count = 0.0;  // downlink neighbours
  double reward = 0.0;          // node's reward standing
};

struct SyncOutcome {
  bool recomputed = false;
  bool broadcast = false;  // a zone-state broadcast must be charged
};

// Per-zone SDN controller. Driven by the engine; single writer.
class ZoneController {
 public:
  ZoneController(ZoneState zone, double t_sync, double fallback_av_rad);

  const ZoneState& zone() const noexcept { return zone_; }
  const ControllerRegistry& registry() const noexcept { return registry_; }
  double last_sync() const noexcept { return last_sync_; }
  bool sync_due(double t_now) const noexcept { return t_now - last_sync_ >= registry_.t_sync; }

  // A transmission attempt completed somewhere in this zone.
  void note_attempt() noexcept { ++attempts_since_sync_; }

  // Rebuilds theta/phi/av_rad/ng and the zone reward from the member reports.
  // RI is left untouched when membership and activity are unchanged.
  SyncOutcome sync(double t_now, std::span<const MemberReport> members);

  // Stores the reward of a session whose source lives in this zone.
  void report_session_reward(SessionId session, double ew, double et);
  void end_session(SessionId session);
  const std::map<SessionId, double>& session_rewards() const noexcept { return session_rewards_; }

  void set_waste(double ew, double et) noexcept {
    zone_.ew = ew;
    zone_.et = et;
  }

 private:
  ZoneState zone_;
  ControllerRegistry registry_;
  std::map<SessionId, double> session_rewards_;
  double fallback_av_rad_;
  double last_sync_ = -1e300;
  std::uint64_t attempts_since_sync_ = 0;
  bool reward_dirty_ = true;
};

// Collects zone rewards at a slower period and caches the network reward.
class NetworkController {
 public:
  explicit NetworkController(double t_net) : t_net_(t_net) {}

  bool collect_due(double t_now) const noexcept { return t_now - last_collect_ >= t_net_; }
  double collect(double t_now, std::span<const ZoneController> zones);
  double reward() const noexcept { return reward_; }

 private:
  double t_net_;
  double last_collect_ = -1e300;
  double reward_ = 0.0;
};

// Node that relays a session report: the source while it is a member of
// `zone`, otherwise the lowest-id peripheral of the route on the zone's
// boundary. `nodes` is indexed by node id.
std::optional<NodeId> choose_report_relay(std::span<const NodeId> route, NodeId src,
                                          std::span<const NodeState> nodes, const ZoneState& zone);

}  // namespace rltrc
