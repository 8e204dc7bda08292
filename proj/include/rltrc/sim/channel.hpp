#pragma once

#include <optional>
#include <vector>

#include "rltrc/ids.hpp"
#include "rltrc/policy.hpp"

namespace rltrc::sim {

// Ground-truth linear attenuation: RSS = P - alpha * d + noise.
struct LinkChannel {
  double alpha = 1.0;     // power units per metre
  double noise_sd = 0.0;  // Gaussian noise on the received strength
};

// Received strength, or nullopt when the packet is lost (receiver beyond the
// sender's radio range or below its minimum receive power). Noise never
// pushes the received strength above the transmitted power.
std::optional<double> propagate(double tx_power, double distance, const LinkChannel& link, double min_rcv,
                                double radio_range, Rng& rng);

// Noise-free received strength.
inline double mean_rss(double tx_power, double distance, double alpha) noexcept { return tx_power - alpha * distance; }

// Symmetric per-pair attenuation drawn once per scenario.
class ChannelMatrix {
 public:
  ChannelMatrix() = default;
  ChannelMatrix(std::size_t nodes, double alpha_min, double alpha_max, double noise_sd, Rng& rng);
  static ChannelMatrix uniform(std::size_t nodes, double alpha, double noise_sd);

  LinkChannel link(NodeId a, NodeId b) const;
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  double noise_sd_ = 0.0;
  std::vector<double> alpha_;  // upper triangle, row-major
};

}  // namespace rltrc::sim
