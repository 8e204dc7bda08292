#include "rltrc/link_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "rltrc/errors.hpp"

namespace rltrc {

void record_send(CommCacheEntry& entry) noexcept { ++entry.packets_tx; }

void record_ack(CommCacheEntry& entry, PacketRecord packet, const EstimatorContext& ctx) {
  if (packet.rss > packet.tx_power) throw MalformedAckError("ack reports RSS above the transmit power");
  if (!(packet.t_ack > packet.t_msg)) throw MalformedAckError("ack timestamp does not follow the message");

  ++entry.packets_rx;
  // packets_rx may only overtake packets_tx for records injected without a send
  entry.packets_tx = std::max(entry.packets_tx, entry.packets_rx);
  const auto n = static_cast<double>(entry.packets_rx);
  entry.avg_rss += (packet.rss - entry.avg_rss) / n;
  entry.avg_tpl += (packet.tx_power - entry.avg_tpl) / n;
  packet.avg_rss_after = entry.avg_rss;

  entry.last_two[0] = entry.last_two[1];
  entry.last_two[1] = packet;
  if (!entry.has_two_records()) return;

  const auto& r1 = *entry.last_two[0];
  const auto& r2 = *entry.last_two[1];
  try {
    const double a = estimate_attenuation(r1, r2, ctx.signal_speed);
    if (a > 0.0) entry.sig_atn = a;
  } catch (const UndefinedAttenuationError&) {
  }
  entry.recent_trend = detect_trend(r1, r2);
  try {
    entry.velocity = estimate_velocity(r1, r2, entry.attenuation_or(ctx.prior_attenuation));
  } catch (const VelocityUnobservableError&) {
  } catch (const DomainError&) {
  }
  entry.expected_timestamp_end = expected_link_end(ctx.radio_range, entry.velocity, r2.t_ack);
}

double travelled_distance(const PacketRecord& rec, double signal_speed) noexcept {
  return signal_speed * rec.travel_time();
}

double estimate_attenuation(const PacketRecord& rec1, const PacketRecord& rec2, double signal_speed) {
  const double d1 = travelled_distance(rec1, signal_speed);
  const double d2 = travelled_distance(rec2, signal_speed);
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw UndefinedAttenuationError("zero travel distance");
  return (rec1.attenuation() / d1 + rec2.attenuation() / d2) / 2.0;
}

Trend detect_trend(const PacketRecord& rec1, const PacketRecord& rec2) noexcept {
  const double rtt1 = rec1.travel_time();
  const double rtt2 = rec2.travel_time();
  const double avg1 = rec1.mean_rss_after();
  const double avg2 = rec2.mean_rss_after();
  if (rtt2 <= rtt1 && avg1 <= avg2) return Trend::Approaching;
  if (rtt2 > rtt1 && avg1 > avg2) return Trend::Receding;
  return Trend::Unknown;
}

double velocity_from_attenuation(double ff1, double ff2, double sig_atn, double elapsed) {
  if (!(sig_atn > 0.0)) throw DomainError("attenuation must be positive");
  if (elapsed == 0.0) throw VelocityUnobservableError("no elapsed time between records");
  return std::abs(ff2 - ff1) / (sig_atn * std::abs(elapsed));
}

double estimate_velocity(const PacketRecord& rec1, const PacketRecord& rec2, double sig_atn) {
  return velocity_from_attenuation(rec1.attenuation(), rec2.attenuation(), sig_atn, rec2.t_msg - rec1.t_msg);
}

double predict_displacement(double velocity, double t_now, double t_ack2) noexcept {
  return velocity * std::max(0.0, t_now - t_ack2);
}

bool should_drop(double dist_est, double radio_range) noexcept { return dist_est > 2.0 * radio_range; }

double power_threshold(double sig_atn, double dist_est, double min_rcv) noexcept {
  return sig_atn * dist_est + min_rcv;
}

std::span<const double> available_levels(std::span<const double> levels, double p_thres) noexcept {
  const auto it = std::upper_bound(levels.begin(), levels.end(), p_thres);
  return levels.subspan(static_cast<std::size_t>(it - levels.begin()));
}

double expected_link_end(double radio_range, double velocity, double t_ack2) noexcept {
  if (!(velocity > 0.0)) return kNever;
  return 2.0 * radio_range / velocity + t_ack2;
}

void mark_reliability(CommCacheEntry& entry, double actual_break_time) noexcept {
  entry.timestamp_end = actual_break_time;
  entry.reliable = !(actual_break_time < entry.expected_timestamp_end);
  entry.recent_trend = Trend::Unknown;
}

}  // namespace rltrc
