#include "smcodec/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "smcodec/rng.hpp"
#include "smcodec/subsample.hpp"

namespace smc {

std::vector<bool> survival_mask(Eigen::Index total, const ChannelConfig& cfg) {
  if (cfg.plr < 0.0 || cfg.plr > 1.0)
    throw std::invalid_argument("transmit: plr must be in [0, 1]");
  if (total < 0) throw std::invalid_argument("transmit: negative count");
  std::vector<bool> alive(static_cast<std::size_t>(total), true);
  if (total == 0) return alive;
  if (cfg.model == ChannelModel::CountExact) {
    const auto lost = static_cast<Eigen::Index>(
        std::lround(static_cast<double>(total) * cfg.plr));
    if (lost > 0) {
      SubsampleSelector pick = make_subsampler(cfg.seed, total, lost);
      for (Eigen::Index j = 0; j < pick.m(); ++j)
        alive[static_cast<std::size_t>(pick.rows[j])] = false;
    }
  } else {
    const KeyedRng rng(cfg.seed);
    for (Eigen::Index i = 0; i < total; ++i)
      alive[static_cast<std::size_t>(i)] =
          KeyedRng::to_unit(rng.at(static_cast<std::uint64_t>(i))) >= cfg.plr;
  }
  return alive;
}

std::vector<Packet> transmit(const std::vector<Packet>& packets,
                             const ChannelConfig& cfg) {
  const std::vector<bool> alive =
      survival_mask(static_cast<Eigen::Index>(packets.size()), cfg);
  std::vector<Packet> out;
  out.reserve(packets.size());
  for (std::size_t i = 0; i < packets.size(); ++i)
    if (alive[i]) out.push_back(packets[i]);
  return out;
}

}  // namespace smc
