#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>

#include "rltrc/ids.hpp"

namespace rltrc {

enum class Trend : int { Receding = -1, Unknown = 0, Approaching = 1 };

inline constexpr double kNever = std::numeric_limits<double>::infinity();

// One acknowledged data packet as seen by its sender. The ack carries the
// receiver's reception timestamp, so t_ack - t_msg is the one-way travel time.
struct PacketRecord {
  double t_msg = 0.0;
  double t_ack = 0.0;
  double tx_power = 0.0;  // PWR
  double rss = 0.0;       // RSS reported back in the ack
  // Cumulative mean RSS of the link right after this packet. Filled in by
  // record_ack; hand-built records fall back to their own rss.
  std::optional<double> avg_rss_after;

  double attenuation() const noexcept { return tx_power - rss; }
  double travel_time() const noexcept { return t_ack - t_msg; }
  double mean_rss_after() const noexcept { return avg_rss_after.value_or(rss); }
};

struct EstimatorContext {
  double signal_speed = 4000.0;      // vs, m/s
  double prior_attenuation = 1.5;    // used until two acks exist
  double radio_range = 0.0;          // R_i of the cache owner
};

// Per-successor entry of a node's communication cache.
struct CommCacheEntry {
  NodeId successor{};
  std::uint64_t packets_tx = 0;
  std::uint64_t packets_rx = 0;
  double avg_rss = 0.0;
  double avg_tpl = 0.0;
  Trend recent_trend = Trend::Unknown;
  double velocity = 0.0;
  double timestamp_begin = 0.0;
  std::optional<double> timestamp_end;
  double expected_timestamp_end = kNever;
  std::array<std::optional<PacketRecord>, 2> last_two;  // [older, newer]
  std::optional<double> sig_atn;
  bool reliable = true;

  double prr() const noexcept {
    return packets_tx == 0 ? 0.0 : static_cast<double>(packets_rx) / static_cast<double>(packets_tx);
  }
  double rss_over_tpl() const noexcept { return avg_tpl > 0.0 ? avg_rss / avg_tpl : 0.0; }
  bool has_two_records() const noexcept { return last_two[0].has_value() && last_two[1].has_value(); }
  const std::optional<PacketRecord>& newest() const noexcept { return last_two[1]; }
  double attenuation_or(double prior) const noexcept { return sig_atn.value_or(prior); }
};

// Counts one transmission towards the successor.
void record_send(CommCacheEntry& entry) noexcept;

// Folds an acknowledged packet into the entry. Once two records exist the
// attenuation, trend, velocity and expected link end are re-derived.
// Throws MalformedAckError when rss > tx_power or t_ack <= t_msg.
void record_ack(CommCacheEntry& entry, PacketRecord packet, const EstimatorContext& ctx);

// Distance implied by a record's travel time.
double travelled_distance(const PacketRecord& rec, double signal_speed) noexcept;

// Mean attenuation per metre over two records.
// Throws UndefinedAttenuationError when either travel time is not positive.
double estimate_attenuation(const PacketRecord& rec1, const PacketRecord& rec2, double signal_speed);

Trend detect_trend(const PacketRecord& rec1, const PacketRecord& rec2) noexcept;

// Successor speed from the change in attenuation between two records over
// the elapsed time between them. Throws VelocityUnobservableError when the
// records share a timestamp, DomainError when sig_atn <= 0.
double estimate_velocity(const PacketRecord& rec1, const PacketRecord& rec2, double sig_atn);
double velocity_from_attenuation(double ff1, double ff2, double sig_atn, double elapsed);

double predict_displacement(double velocity, double t_now, double t_ack2) noexcept;

bool should_drop(double dist_est, double radio_range) noexcept;

// Strict lower bound on a usable transmit power.
double power_threshold(double sig_atn, double dist_est, double min_rcv) noexcept;

// Levels strictly above p_thres; always a suffix of the ascending input.
std::span<const double> available_levels(std::span<const double> levels, double p_thres) noexcept;

// Expected break time of the link; kNever for a stationary successor.
double expected_link_end(double radio_range, double velocity, double t_ack2) noexcept;

void mark_reliability(CommCacheEntry& entry, double actual_break_time) noexcept;

}  // namespace rltrc
