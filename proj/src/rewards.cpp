#include "rltrc/rewards.hpp"

#include <cmath>
#include <string>

#include "rltrc/errors.hpp"

namespace rltrc {

double node_self_reward(double r_prev, double p_max, double action) {
  if (action > p_max) throw InvalidActionError("action exceeds the top power level");
  return p_max - action + r_prev;
}

double successor_reward_ack(double prr, double rss_over_tpl, Trend trend) {
  if (!(prr >= 0.0 && prr <= 1.0)) throw DomainError("prr outside [0,1]");
  if (!(rss_over_tpl >= 0.0 && rss_over_tpl <= 1.0)) throw DomainError("rss/tpl outside [0,1]");
  const double x = (1.0 + prr) / 2.0 * ((1.0 + rss_over_tpl) / 2.0);
  double e = 0.5;
  if (trend == Trend::Approaching) e = 0.25;
  if (trend == Trend::Receding) e = 0.75;
  return std::pow(x, e);
}

double successor_reward_noack(double rd_prev, int turn, int mx_atmpt, double broad_cost) noexcept {
  return turn > mx_atmpt ? rd_prev - broad_cost : rd_prev;
}

double expected_max_neighbor_distance(double n_neighbors, double radius) {
  if (!(n_neighbors > 0.0)) throw DomainError("no neighbours");
  return 2.0 * n_neighbors * radius / (2.0 * n_neighbors + 1.0);
}

double per_hop_progress(double phi, double av_rad) noexcept { return 2.0 * phi * av_rad / (2.0 * phi + 1.0); }

double min_hop_count(double theta, double phi, double av_rad) noexcept {
  return theta * (2.0 * phi + 1.0) / (2.0 * phi * av_rad);
}

double avg_hop_count(double theta, double phi, double av_rad) noexcept {
  return theta * (1.0 + (2.0 * phi + 1.0) / (2.0 * phi * av_rad)) / 2.0;
}

double broadcast_cost(double ng, double h_avg, double cap) {
  if (!(ng >= 1.0)) throw DomainError("ng must be at least 1");
  if (!(h_avg >= 0.0)) throw DomainError("negative hop count");
  const double terms = std::floor(h_avg);
  if (ng == 1.0) return std::min(terms, cap);
  // log-domain guard before the closed form overflows
  if ((terms + 1.0) * std::log(ng) > std::log(cap) + std::log(ng)) return cap;
  const double sum = (std::pow(ng, terms + 1.0) - 1.0) / (ng - 1.0) - 1.0;
  return std::min(sum, cap);
}

Waste transmission_waste(const WasteInputs& in) {
  if (in.turn < 1 || in.turn > in.mx_atmpt + 1) {
    throw TurnOutOfRangeError("turn " + std::to_string(in.turn) + " outside [1, " +
                              std::to_string(in.mx_atmpt + 1) + "]");
  }
  if (in.turn == 1) return {};
  Waste w{in.prev_action, in.tau_a};
  if (in.turn <= in.mx_atmpt) return w;
  for (const auto& z : in.zone_set) {
    w.energy += z.cost;
    w.time += z.hops * in.hop_latency;
  }
  w.energy += in.invested_energy;
  w.time += in.invested_time;
  return w;
}

void WasteLedger::accumulate(ZoneId zone, std::span<const Waste> transmissions) {
  auto& t = totals_.at(index_of(zone));
  for (const auto& w : transmissions) {
    t.energy += w.energy;
    t.time += w.time;
  }
}

double session_reward(double ew, double et) noexcept { return std::exp(-ew * (1.0 - 1.0 / (1.0 + et))); }

double zone_reward(std::span<const double> node_rewards, std::span<const double> session_rewards) noexcept {
  double s = 0.0;
  for (double r : node_rewards) s += r;
  for (double r : session_rewards) s += r;
  return s;
}

double network_reward(std::span<const double> zone_rewards) noexcept {
  double s = 0.0;
  for (double r : zone_rewards) s += r;
  return s;
}

}  // namespace rltrc
