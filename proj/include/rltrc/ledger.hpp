#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rltrc/ids.hpp"

namespace rltrc {

enum class MessageKind : std::uint8_t { Data, Ack, RouteRequest, RouteReply, Breakage, ZoneState, Beacon };

std::string_view to_string(MessageKind kind) noexcept;

enum class PacketFate : std::uint8_t { Pending, Delivered, DroppedUnreachable, DroppedNodeDead };

std::string_view to_string(PacketFate fate) noexcept;

// One transmitted message and the energy it took from its sender.
struct DebitEntry {
  double time = 0.0;
  NodeId node{};
  MessageKind kind = MessageKind::Data;
  double joules = 0.0;
};

// Waste attributed to one transmission record (hop-start, hop-end, turn).
struct WasteEntry {
  double time = 0.0;
  ZoneId zone{};
  SessionId session{};
  NodeId hop_start{};
  NodeId hop_end{};
  int turn = 1;
  double energy = 0.0;
  double duration = 0.0;
};

// Time spent on an attempt or a route discovery.
struct TimeEntry {
  double time = 0.0;
  double seconds = 0.0;
};

struct PacketEntry {
  PacketId id{};
  SessionId session{};
  double generated = 0.0;
  PacketFate fate = PacketFate::Pending;
  double finished = 0.0;  // delivery or drop time
};

struct NodeEnergy {
  NodeId id{};
  double start = 0.0;
  double end = 0.0;
};

// Append-only record of a run; every reported metric derives from it.
struct MetricsLedger {
  double duration = 0.0;
  std::vector<DebitEntry> debits;
  std::vector<WasteEntry> wastes;
  std::vector<TimeEntry> invested_time;
  std::vector<PacketEntry> packets;
  std::vector<NodeEnergy> nodes;
  std::uint64_t events_processed = 0;
};

}  // namespace rltrc
