#include "rltrc/sim/channel.hpp"

#include <algorithm>
#include <utility>

namespace rltrc::sim {

std::optional<double> propagate(double tx_power, double distance, const LinkChannel& link, double min_rcv,
                                double radio_range, Rng& rng) {
  if (distance > radio_range) return std::nullopt;
  double rss = mean_rss(tx_power, distance, link.alpha);
  if (link.noise_sd > 0.0) rss += std::normal_distribution<double>(0.0, link.noise_sd)(rng);
  rss = std::min(rss, tx_power);
  if (rss < min_rcv) return std::nullopt;
  return rss;
}

ChannelMatrix::ChannelMatrix(std::size_t nodes, double alpha_min, double alpha_max, double noise_sd, Rng& rng)
    : n_(nodes), noise_sd_(noise_sd), alpha_(nodes * (nodes - (nodes > 0 ? 1 : 0)) / 2) {
  std::uniform_real_distribution<double> u(alpha_min, alpha_max);
  for (auto& a : alpha_) a = alpha_min == alpha_max ? alpha_min : u(rng);
}

ChannelMatrix ChannelMatrix::uniform(std::size_t nodes, double alpha, double noise_sd) {
  ChannelMatrix m;
  m.n_ = nodes;
  m.noise_sd_ = noise_sd;
  m.alpha_.assign(nodes * (nodes - (nodes > 0 ? 1 : 0)) / 2, alpha);
  return m;
}

LinkChannel ChannelMatrix::link(NodeId a, NodeId b) const {
  std::size_t i = index_of(a);
  std::size_t j = index_of(b);
  if (i > j) std::swap(i, j);
  if (i == j) return {alpha_.empty() ? 1.0 : alpha_.front(), noise_sd_};
  // row i holds pairs (i, i+1..n-1)
  const std::size_t offset = i * n_ - i * (i + 1) / 2 + (j - i - 1);
  return {alpha_.at(offset), noise_sd_};
}

}  // namespace rltrc::sim
