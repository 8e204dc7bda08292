#pragma once

#include <map>
#include <span>
#include <vector>

#include "rltrc/ids.hpp"
#include "rltrc/link_estimation.hpp"

namespace rltrc {

inline constexpr double kDefaultBroadcastCap = 1e12;

// Self reward r_j plus the rewards the node assigns to its successors.
struct NodeRewardState {
  double self_reward = 0.0;
  std::map<NodeId, double> successor_rewards;
  double last_action = 0.0;
};

// r_next = p_max - action + r_prev. Throws InvalidActionError if action > p_max.
double node_self_reward(double r_prev, double p_max, double action);

// Rule 1: (F-PRR * F-RSS)^e with e = 0.25 / 0.5 / 0.75 for an approaching /
// unknown / receding successor. Throws DomainError outside [0,1].
double successor_reward_ack(double prr, double rss_over_tpl, Trend trend);

// Rule 2: the broadcast cost is deducted once the attempts are exhausted.
double successor_reward_noack(double rd_prev, int turn, int mx_atmpt, double broad_cost) noexcept;

// Expected distance to the farthest of n neighbours uniform in a disc of
// radius R: 2nR / (2n + 1). Throws DomainError for n = 0.
double expected_max_neighbor_distance(double n_neighbors, double radius);

double per_hop_progress(double phi, double av_rad) noexcept;
double min_hop_count(double theta, double phi, double av_rad) noexcept;
double avg_hop_count(double theta, double phi, double av_rad) noexcept;

// ng + ng^2 + ... + ng^floor(h_avg), saturated at `cap`.
// Throws DomainError for ng < 1 or negative h_avg.
double broadcast_cost(double ng, double h_avg, double cap = kDefaultBroadcastCap);

struct Waste {
  double energy = 0.0;
  double time = 0.0;
};

// Cost of one zone taking part in a route-request broadcast.
struct ZoneBroadcastTerm {
  double cost = 0.0;           // energy spent by the broadcast in the zone
  double hops = 0.0;           // theta / prg of the zone
};

struct WasteInputs {
  int turn = 1;
  int mx_atmpt = 3;
  double prev_action = 0.0;  // energy of the previous attempt
  double tau_a = 0.0;
  std::span<const ZoneBroadcastTerm> zone_set;
  double hop_latency = 0.0;  // time per broadcast hop
  double invested_energy = 0.0;  // source -> hop-start
  double invested_time = 0.0;
};

// Energy and time wasted by one transmission at the given turn.
// Throws TurnOutOfRangeError unless 1 <= turn <= mx_atmpt + 1.
Waste transmission_waste(const WasteInputs& in);

// Cumulative per-zone waste (ew, et). Single writer.
class WasteLedger {
 public:
  explicit WasteLedger(std::size_t zone_count = 0) : totals_(zone_count) {}

  void accumulate(ZoneId zone, std::span<const Waste> transmissions);
  void accumulate(ZoneId zone, const Waste& w) { accumulate(zone, std::span<const Waste>(&w, 1)); }

  double ew(ZoneId zone) const { return totals_.at(index_of(zone)).energy; }
  double et(ZoneId zone) const { return totals_.at(index_of(zone)).time; }
  std::size_t zone_count() const noexcept { return totals_.size(); }

 private:
  std::vector<Waste> totals_;
};

// exp(-ew * (1 - 1/(1 + et))), always in (0, 1].
double session_reward(double ew, double et) noexcept;

double zone_reward(std::span<const double> node_rewards, std::span<const double> session_rewards) noexcept;
double network_reward(std::span<const double> zone_rewards) noexcept;

}  // namespace rltrc
