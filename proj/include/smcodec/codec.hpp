#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <utility>
#include <vector>

#include "smcodec/block_transform.hpp"
#include "smcodec/image.hpp"

namespace smc {

enum class CodecMode : std::uint8_t { Standard = 0, FullRedundancy = 1 };

struct SamplingConfig {
  TransformKind transform = TransformKind::BDCT;
  Eigen::Index block_size = 32;
  double sr = 0.6;                  // alpha in (0, 1]
  std::uint64_t d_seed = 0;
  std::uint32_t packet_size = 100;  // m
  CodecMode mode = CodecMode::Standard;
  std::uint64_t rprime_seed = 0;    // FullRedundancy only
  bool secret_subsampler = false;   // withhold d_seed from the header
};

// Fixed 43-byte little-endian header, replicated into every packet so any
// received packet is self-describing.
struct StreamHeader {
  static constexpr char kMagic[4] = {'S', 'M', 'C', '1'};
  static constexpr std::size_t kWireSize = 43;

  std::uint8_t version = 1;
  std::uint8_t transform_id = 0;  // 0 = BDCT, 1 = BWHT
  std::uint16_t block_size = 32;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint32_t m_count = 0;      // M, number of measurements
  std::uint16_t packet_size = 100;
  std::uint64_t d_seed = 0;       // 0 when withheld (secret-subsampler keying)
  std::uint64_t rprime_seed = 0;  // 0 unless full-redundancy mode
  double mean_mu = 0.0;
  std::uint8_t mode = 0;

  Eigen::Index n() const {
    return static_cast<Eigen::Index>(width) * static_cast<Eigen::Index>(height);
  }
  Eigen::Index packet_count() const {
    return (static_cast<Eigen::Index>(m_count) + packet_size - 1) / packet_size;
  }
  // Measurement count in the final packet (m' in the rate accounting).
  Eigen::Index last_packet_size() const {
    return static_cast<Eigen::Index>(m_count) -
           static_cast<Eigen::Index>(packet_size) * (packet_count() - 1);
  }
  TransformKind transform_kind() const {
    return static_cast<TransformKind>(transform_id);
  }
  double measurement_scale() const;  // sqrt(N / M)

  bool operator==(const StreamHeader&) const = default;
};

std::vector<std::uint8_t> serialize_header(const StreamHeader& h);
StreamHeader parse_header(const std::uint8_t* data, std::size_t len);

// Quantized measurement stream: 8-bit symbols plus the sorted indices whose
// true value fell outside [-127.5, 127.5). Symbols at discarded indices are 0
// and carry no information.
struct QuantizedStream {
  StreamHeader header;
  std::vector<std::uint8_t> symbols;
  std::vector<std::uint32_t> discarded;

  double gamma() const {
    return static_cast<double>(discarded.size()) /
           static_cast<double>(symbols.size());
  }
};

struct Packet {
  StreamHeader header;
  std::uint32_t index = 0;
  std::vector<std::uint16_t> discard_offsets;  // in-packet offsets
  std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> serialize_packet(const Packet& p);
Packet parse_packet(const std::uint8_t* data, std::size_t len);

// Measure the encrypted image: y = D F (x_en - mu*1), with D drawn from
// d_seed and mu the pixel mean (shipped in the header). The sqrt(N/M)
// normalization belongs to the reconstruction operator and is deliberately
// not applied to the transmitted values, which keeps them in the pixel-like
// range the 8-bit quantizer is built around.
std::pair<Eigen::VectorXd, StreamHeader> sample(const ImageBuffer& cipher_img,
                                                const SamplingConfig& cfg);

// Full-redundancy variant: y = R' F (x_en - mu*1), length N.
std::pair<Eigen::VectorXd, StreamHeader> sample_full_redundancy(
    const ImageBuffer& cipher_img, const SamplingConfig& cfg);

QuantizedStream quantize(const Eigen::Ref<const Eigen::VectorXd>& y,
                         const StreamHeader& header);

// Values at kept indices (symbol - 128), in index order.
std::pair<Eigen::VectorXd, std::vector<std::uint32_t>> dequantize(
    const QuantizedStream& qs);

std::vector<Packet> packetize(const QuantizedStream& qs);

// Reassemble received packets into a gapped stream plus the set of usable
// measurement indices (payload ranges of received packets minus their
// discards), sorted ascending.
std::pair<QuantizedStream, std::vector<std::uint32_t>> depacketize(
    const std::vector<Packet>& packets);

// Corrected rate pair for packetized loss: the fraction of measurements that
// survive when round(P*beta) of P packets drop and the short last packet is
// kept, and the realized loss rate round(P*beta)/P.
std::pair<double, double> effective_rates(Eigen::Index m_count,
                                          Eigen::Index packet_size, double beta);

// Flat container framing for packet files: "SMCP", u32 count, then
// length-prefixed packets.
std::vector<std::uint8_t> serialize_packets(const std::vector<Packet>& packets);
std::vector<Packet> parse_packets(const std::uint8_t* data, std::size_t len);

}  // namespace smc
