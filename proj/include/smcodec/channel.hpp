#pragma once

#include <cstdint>
#include <vector>

#include "smcodec/codec.hpp"

namespace smc {

enum class ChannelModel : std::uint8_t { CountExact = 0, BernoulliIID = 1 };

// CountExact drops exactly round(P * plr) uniformly chosen packets, matching
// the rate accounting; BernoulliIID drops each packet independently.
struct ChannelConfig {
  double plr = 0.0;
  ChannelModel model = ChannelModel::CountExact;
  std::uint64_t seed = 0;
};

std::vector<Packet> transmit(const std::vector<Packet>& packets,
                             const ChannelConfig& cfg);

// Survival mask without touching packet contents; index i corresponds to
// packet index i of a count-`total` stream.
std::vector<bool> survival_mask(Eigen::Index total, const ChannelConfig& cfg);

}  // namespace smc
