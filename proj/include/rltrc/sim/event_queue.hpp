#pragma once

#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

#include "rltrc/ids.hpp"

namespace rltrc::sim {

enum class EventKind : std::uint8_t {
  PacketArrival,
  SendAttempt,
  AckTimeout,
  AckArrival,
  MobilityStep,
  ControllerSync,
  NetworkCollect,
  RouteReply,
  SessionStart,
  SessionEnd,
  PacketGeneration,
  Beacon,
};

inline constexpr std::size_t kEventKindCount = 12;

std::string_view to_string(EventKind kind) noexcept;

struct EventPayload {
  NodeId node{};
  NodeId peer{};
  SessionId session{};
  PacketId packet{};
  std::uint64_t token = 0;
};

struct Event {
  double fire_time = 0.0;
  std::uint64_t sequence = 0;
  EventKind kind = EventKind::SendAttempt;
  EventPayload payload;
};

// Min-queue on (fire_time, sequence). Sequence numbers are unique and
// increase with insertion, so equal-time events fire in scheduling order.
class EventQueue {
 public:
  std::uint64_t push(double fire_time, EventKind kind, EventPayload payload = {});
  Event pop();
  const Event& top() const { return heap_.top(); }
  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.sequence > b.sequence;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_sequence_ = 0;
};

}  // namespace rltrc::sim
