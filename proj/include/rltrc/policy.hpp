#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace rltrc {

using Rng = std::mt19937_64;

inline constexpr double kSigmaFloor = 0.001;
inline constexpr double kSigmaCeil = 0.999;

struct SigmaInputs {
  double ri = 0.0;  // reward of the node's zone
  double rn = 0.0;  // reward of the network
};

// Exploration rate from the zone and network rewards, clamped to
// [0.001, 0.999]. Total over the reals.
double compute_sigma(const SigmaInputs& in) noexcept;

// Greedy pick is the highest available level. Unreliable links always get
// it; otherwise it is chosen with probability (1 - sigma) + sigma/k and every
// other level with sigma/k. Throws UnusableLinkError on an empty set.
double select_power_level(std::span<const double> available, double sigma, bool reliable, Rng& rng);

struct ArmStats {
  std::vector<std::uint64_t> pulls;
  std::vector<double> cumulative_reward;
};

// Highest average payout; unpulled arms first, ties to the lowest index.
std::size_t greedy_arm(const ArmStats& stats);

enum class PolicyKind { RlTrc, FixedMax, OdtpcLike, BeaconPrrLike, BeaconRssiLike };

std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy(std::string_view name) noexcept;

// What a baseline knows about the link it is about to use.
struct BaselineLinkState {
  double sig_atn = 0.0;
  std::optional<double> last_distance;
  std::optional<double> last_rss;
  double prr = 1.0;
  std::optional<double> current_level;
  double min_rcv = 0.0;
};

struct BaselineThresholds {
  double rssi_high = 0.0;  // absolute power units
  double rssi_low = 0.0;
  double prr_target = 0.9;
};

// Simplified comparison schemes:
//   fixed-max   always the top level;
//   odtpc-like  smallest level whose predicted RSS exceeds min_rcv;
//   beacon-rssi one notch down above rssi_high, one up below rssi_low;
//   beacon-prr  top level while PRR < target, else one notch down.
double baseline_decide(PolicyKind kind, const BaselineLinkState& link, std::span<const double> levels,
                       const BaselineThresholds& thresholds);

}  // namespace rltrc
