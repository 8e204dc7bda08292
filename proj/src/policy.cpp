#include "rltrc/policy.hpp"

#include <algorithm>
#include <cmath>

#include "rltrc/errors.hpp"

namespace rltrc {

namespace {

double clamp_sigma(double s) noexcept {
  if (std::isnan(s)) return kSigmaFloor;
  return std::clamp(s, kSigmaFloor, kSigmaCeil);
}

}  // namespace

double compute_sigma(const SigmaInputs& in) noexcept {
  const double ri = in.ri;
  const double rn = in.rn;
  if (std::isnan(ri) || std::isnan(rn)) return kSigmaFloor;
  if (ri < 0.0) return kSigmaFloor;
  if (ri < 1.0) return clamp_sigma(ri);
  if (rn > 1.0) return clamp_sigma(std::pow(1.0 - 1.0 / (1.0 + ri), 1.0 / rn));
  if (rn >= 0.0) return clamp_sigma(1.0 - 1.0 / (1.0 + ri));
  if (rn >= -1.0) {
    // exponent 1/(rn+1) blows up at rn = -1; the limit is 1
    if (rn == -1.0) return kSigmaCeil;
    return clamp_sigma(1.0 - 1.0 / std::pow(1.0 + ri, 1.0 / (rn + 1.0)));
  }
  return kSigmaFloor;
}

double select_power_level(std::span<const double> available, double sigma, bool reliable, Rng& rng) {
  if (available.empty()) throw UnusableLinkError("no power level clears the threshold");
  const double greedy = available.back();
  if (!reliable) return greedy;
  const auto k = available.size();
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) >= sigma) return greedy;
  // exploring: uniform over all k, the greedy level included
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  return available[pick(rng)];
}

std::size_t greedy_arm(const ArmStats& stats) {
  const auto n = std::min(stats.pulls.size(), stats.cumulative_reward.size());
  if (n == 0) throw DomainError("no arms");
  for (std::size_t i = 0; i < n; ++i) {
    if (stats.pulls[i] == 0) return i;
  }
  std::size_t best = 0;
  double best_avg = stats.cumulative_reward[0] / static_cast<double>(stats.pulls[0]);
  for (std::size_t i = 1; i < n; ++i) {
    const double avg = stats.cumulative_reward[i] / static_cast<double>(stats.pulls[i]);
    if (avg > best_avg) {
      best = i;
      best_avg = avg;
    }
  }
  return best;
}

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::RlTrc: return "rl-trc";
    case PolicyKind::FixedMax: return "fixed-max";
    case PolicyKind::OdtpcLike: return "odtpc-like";
    case PolicyKind::BeaconPrrLike: return "beacon-prr-like";
    case PolicyKind::BeaconRssiLike: return "beacon-rssi-like";
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view name) noexcept {
  for (auto k : {PolicyKind::RlTrc, PolicyKind::FixedMax, PolicyKind::OdtpcLike, PolicyKind::BeaconPrrLike,
                 PolicyKind::BeaconRssiLike}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

// Index of the level closest to `level` (exact match expected).
std::size_t notch_of(std::span<const double> levels, double level) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (std::abs(levels[i] - level) < std::abs(levels[best] - level)) best = i;
  }
  return best;
}

}  // namespace

double baseline_decide(PolicyKind kind, const BaselineLinkState& link, std::span<const double> levels,
                       const BaselineThresholds& thresholds) {
  if (levels.empty()) throw UnusableLinkError("no power levels");
  const double top = levels.back();
  const std::size_t last = levels.size() - 1;

  switch (kind) {
    case PolicyKind::RlTrc:
    case PolicyKind::FixedMax:
      return top;

    case PolicyKind::OdtpcLike: {
      if (!link.last_distance) return top;
      const double loss = link.sig_atn * *link.last_distance;
      for (double p : levels) {
        if (p - loss > link.min_rcv) return p;
      }
      return top;
    }

    case PolicyKind::BeaconRssiLike: {
      if (!link.current_level || !link.last_rss) return top;
      const std::size_t i = notch_of(levels, *link.current_level);
      if (*link.last_rss > thresholds.rssi_high) return levels[i == 0 ? 0 : i - 1];
      if (*link.last_rss < thresholds.rssi_low) return levels[std::min(i + 1, last)];
      return levels[i];
    }

    case PolicyKind::BeaconPrrLike: {
      if (!link.current_level || link.prr < thresholds.prr_target) return top;
      const std::size_t i = notch_of(levels, *link.current_level);
      return levels[i == 0 ? 0 : i - 1];
    }
  }
  return top;
}

}  // namespace rltrc
