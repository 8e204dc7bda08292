#include "rltrc/sim/event_queue.hpp"

namespace rltrc::sim {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::PacketArrival: return "packet-arrival";
    case EventKind::SendAttempt: return "send-attempt";
    case EventKind::AckTimeout: return "ack-timeout";
    case EventKind::AckArrival: return "ack-arrival";
    case EventKind::MobilityStep: return "mobility-step";
    case EventKind::ControllerSync: return "controller-sync";
    case EventKind::NetworkCollect: return "network-collect";
    case EventKind::RouteReply: return "route-reply";
    case EventKind::SessionStart: return "session-start";
    case EventKind::SessionEnd: return "session-end";
    case EventKind::PacketGeneration: return "packet-generation";
    case EventKind::Beacon: return "beacon";
  }
  return "unknown";
}

std::uint64_t EventQueue::push(double fire_time, EventKind kind, EventPayload payload) {
  const auto seq = next_sequence_++;
  heap_.push(Event{fire_time, seq, kind, payload});
  return seq;
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  return e;
}

}  // namespace rltrc::sim
