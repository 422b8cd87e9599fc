#include "smcodec/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "smcodec/permutation.hpp"
#include "smcodec/subsample.hpp"

namespace smc {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Reader {
  const std::uint8_t* p;
  std::size_t left;

  void need(std::size_t n) const {
    if (left < n) throw std::invalid_argument("truncated stream");
  }
  std::uint8_t u8() {
    need(1);
    --left;
    return *p++;
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
    p += 2;
    left -= 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    p += 4;
    left -= 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    p += 8;
    left -= 8;
    return v;
  }
};

Eigen::VectorXd centered_transform(const ImageBuffer& img,
                                   const SamplingConfig& cfg, double& mu_out) {
  const Eigen::Index n = img.size();
  if (n < 1) throw std::invalid_argument("sample: empty image");
  if (n % cfg.block_size != 0)
    throw std::invalid_argument(
        "sample: pixel count must be divisible by block_size");
  mu_out = img.mean();
  Eigen::VectorXd x = img.as_vector().array() - mu_out;
  BlockTransform f(BlockTransformSpec{cfg.transform, cfg.block_size, n});
  return f.forward(x);
}

StreamHeader make_header(const ImageBuffer& img, const SamplingConfig& cfg,
                         std::uint32_t m_count, double mu) {
  if (img.width() > 0xffff || img.height() > 0xffff)
    throw std::invalid_argument("sample: image dimensions exceed header range");
  StreamHeader h;
  h.transform_id = static_cast<std::uint8_t>(cfg.transform);
  h.block_size = static_cast<std::uint16_t>(cfg.block_size);
  h.width = static_cast<std::uint16_t>(img.width());
  h.height = static_cast<std::uint16_t>(img.height());
  h.m_count = m_count;
  h.packet_size = static_cast<std::uint16_t>(cfg.packet_size);
  h.d_seed = cfg.secret_subsampler ? 0 : cfg.d_seed;
  h.rprime_seed = cfg.mode == CodecMode::FullRedundancy ? cfg.rprime_seed : 0;
  h.mean_mu = mu;
  h.mode = static_cast<std::uint8_t>(cfg.mode);
  return h;
}

}  // namespace

double StreamHeader::measurement_scale() const {
  return std::sqrt(static_cast<double>(n()) / static_cast<double>(m_count));
}

std::vector<std::uint8_t> serialize_header(const StreamHeader& h) {
  std::vector<std::uint8_t> out;
  out.reserve(StreamHeader::kWireSize);
  out.insert(out.end(), StreamHeader::kMagic, StreamHeader::kMagic + 4);
  out.push_back(h.version);
  out.push_back(h.transform_id);
  put_u16(out, h.block_size);
  put_u16(out, h.width);
  put_u16(out, h.height);
  put_u32(out, h.m_count);
  put_u16(out, h.packet_size);
  put_u64(out, h.d_seed);
  put_u64(out, h.rprime_seed);
  std::uint64_t mu_bits;
  std::memcpy(&mu_bits, &h.mean_mu, sizeof(mu_bits));
  put_u64(out, mu_bits);
  out.push_back(h.mode);
  return out;
}

StreamHeader parse_header(const std::uint8_t* data, std::size_t len) {
  Reader r{data, len};
  r.need(StreamHeader::kWireSize);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, StreamHeader::kMagic, 4) != 0)
    throw std::invalid_argument("parse_header: bad magic");
  StreamHeader h;
  h.version = r.u8();
  if (h.version != 1) throw std::invalid_argument("parse_header: bad version");
  h.transform_id = r.u8();
  if (h.transform_id > 1)
    throw std::invalid_argument("parse_header: unknown transform");
  h.block_size = r.u16();
  h.width = r.u16();
  h.height = r.u16();
  h.m_count = r.u32();
  h.packet_size = r.u16();
  h.d_seed = r.u64();
  h.rprime_seed = r.u64();
  const std::uint64_t mu_bits = r.u64();
  std::memcpy(&h.mean_mu, &mu_bits, sizeof(h.mean_mu));
  h.mode = r.u8();
  if (h.mode > 1) throw std::invalid_argument("parse_header: unknown mode");
  if (h.block_size == 0 || h.packet_size == 0 || h.width == 0 || h.height == 0)
    throw std::invalid_argument("parse_header: zero-sized field");
  if (h.m_count == 0 || static_cast<Eigen::Index>(h.m_count) > h.n())
    throw std::invalid_argument("parse_header: M out of range");
  if (h.n() % h.block_size != 0)
    throw std::invalid_argument("parse_header: block size does not divide N");
  return h;
}

std::pair<Eigen::VectorXd, StreamHeader> sample(const ImageBuffer& img,
                                                const SamplingConfig& cfg) {
  if (cfg.mode != CodecMode::Standard)
    throw std::invalid_argument("sample: config is not Standard mode");
  if (!(cfg.sr > 0.0 && cfg.sr <= 1.0))
    throw std::invalid_argument("sample: sr must be in (0, 1]");
  double mu = 0.0;
  Eigen::VectorXd fx = centered_transform(img, cfg, mu);
  const Eigen::Index n = img.size();
  const auto m = static_cast<Eigen::Index>(std::lround(cfg.sr * static_cast<double>(n)));
  if (m < 1 || m > n) throw std::invalid_argument("sample: M out of range");
  SubsampleSelector sel = make_subsampler(cfg.d_seed, n, m);
  StreamHeader h = make_header(img, cfg, static_cast<std::uint32_t>(m), mu);
  return {subsample(sel, fx, 1.0), h};
}

std::pair<Eigen::VectorXd, StreamHeader> sample_full_redundancy(
    const ImageBuffer& img, const SamplingConfig& cfg) {
  if (cfg.mode != CodecMode::FullRedundancy)
    throw std::invalid_argument(
        "sample_full_redundancy: config is not FullRedundancy mode");
  double mu = 0.0;
  Eigen::VectorXd fx = centered_transform(img, cfg, mu);
  const Eigen::Index n = img.size();
  PermutationMap rp = make_permutation(cfg.rprime_seed, n);
  StreamHeader h = make_header(img, cfg, static_cast<std::uint32_t>(n), mu);
  return {apply_permutation(rp, fx), h};
}

QuantizedStream quantize(const Eigen::Ref<const Eigen::VectorXd>& y,
                         const StreamHeader& header) {
  if (y.size() != static_cast<Eigen::Index>(header.m_count))
    throw std::invalid_argument("quantize: length mismatch with header");
  QuantizedStream qs;
  qs.header = header;
  qs.symbols.assign(static_cast<std::size_t>(y.size()), 0);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double v = y[i];
    if (v >= -127.5 && v < 127.5) {
      // round halves away from zero, then shift into [0, 255]
      qs.symbols[static_cast<std::size_t>(i)] =
          static_cast<std::uint8_t>(std::lround(v) + 128);
    } else {
      qs.discarded.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return qs;
}

std::pair<Eigen::VectorXd, std::vector<std::uint32_t>> dequantize(
    const QuantizedStream& qs) {
  const std::size_t m = qs.symbols.size();
  for (std::size_t i = 0; i < qs.discarded.size(); ++i) {
    if (qs.discarded[i] >= m ||
        (i > 0 && qs.discarded[i] <= qs.discarded[i - 1]))
      throw std::invalid_argument("dequantize: malformed discard list");
  }
  std::vector<std::uint32_t> kept;
  kept.reserve(m - qs.discarded.size());
  Eigen::VectorXd values(static_cast<Eigen::Index>(m - qs.discarded.size()));
  std::size_t di = 0;
  Eigen::Index k = 0;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (di < qs.discarded.size() && qs.discarded[di] == i) {
      ++di;
      continue;
    }
    kept.push_back(i);
    values[k++] = static_cast<double>(qs.symbols[i]) - 128.0;
  }
  return {std::move(values), std::move(kept)};
}

std::vector<Packet> packetize(const QuantizedStream& qs) {
  const StreamHeader& h = qs.header;
  const Eigen::Index m = static_cast<Eigen::Index>(h.m_count);
  if (static_cast<Eigen::Index>(qs.symbols.size()) != m)
    throw std::invalid_argument("packetize: stream/header mismatch");
  const Eigen::Index count = h.packet_count();
  std::vector<Packet> packets(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    Packet& p = packets[static_cast<std::size_t>(i)];
    p.header = h;
    p.index = static_cast<std::uint32_t>(i);
    const Eigen::Index begin = i * h.packet_size;
    const Eigen::Index end = std::min(begin + h.packet_size, m);
    p.payload.assign(qs.symbols.begin() + begin, qs.symbols.begin() + end);
  }
  for (std::uint32_t idx : qs.discarded) {
    const std::uint32_t pi = idx / h.packet_size;
    packets[pi].discard_offsets.push_back(
        static_cast<std::uint16_t>(idx % h.packet_size));
  }
  return packets;
}

std::pair<QuantizedStream, std::vector<std::uint32_t>> depacketize(
    const std::vector<Packet>& packets) {
  if (packets.empty())
    throw std::invalid_argument("depacketize: no packets");
  const StreamHeader& h = packets.front().header;
  QuantizedStream qs;
  qs.header = h;
  qs.symbols.assign(h.m_count, 0);
  std::vector<bool> seen(static_cast<std::size_t>(h.packet_count()), false);
  std::vector<std::uint32_t> received;
  received.reserve(h.m_count);
  for (const Packet& p : packets) {
    if (!(p.header == h))
      throw std::invalid_argument("depacketize: inconsistent headers");
    if (p.index >= seen.size())
      throw std::invalid_argument("depacketize: packet index out of range");
    if (seen[p.index])
      throw std::invalid_argument("depacketize: duplicate packet index");
    seen[p.index] = true;
    const std::uint32_t begin = p.index * h.packet_size;
    const Eigen::Index expect =
        (static_cast<Eigen::Index>(p.index) == h.packet_count() - 1)
            ? h.last_packet_size()
            : static_cast<Eigen::Index>(h.packet_size);
    if (static_cast<Eigen::Index>(p.payload.size()) != expect)
      throw std::invalid_argument("depacketize: bad payload length");
    std::copy(p.payload.begin(), p.payload.end(), qs.symbols.begin() + begin);
    std::vector<bool> is_discard(p.payload.size(), false);
    for (std::uint16_t off : p.discard_offsets) {
      if (off >= p.payload.size())
        throw std::invalid_argument("depacketize: discard offset out of range");
      is_discard[off] = true;
      qs.discarded.push_back(begin + off);
    }
    for (std::size_t j = 0; j < p.payload.size(); ++j)
      if (!is_discard[j]) received.push_back(begin + static_cast<std::uint32_t>(j));
  }
  std::sort(received.begin(), received.end());
  std::sort(qs.discarded.begin(), qs.discarded.end());
  return {std::move(qs), std::move(received)};
}

std::pair<double, double> effective_rates(Eigen::Index m_count,
                                          Eigen::Index packet_size,
                                          double beta) {
  if (m_count < 1 || packet_size < 1)
    throw std::invalid_argument("effective_rates: bad sizes");
  if (beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("effective_rates: beta out of range");
  const double p = std::ceil(static_cast<double>(m_count) /
                             static_cast<double>(packet_size));
  const double lost = std::round(p * beta);
  const double actual_plr = lost / p;
  const double m_last =
      static_cast<double>(m_count) - static_cast<double>(packet_size) * (p - 1);
  // Survivor fraction when the short last packet is among the kept ones.
  const double kept_full = p * (1.0 - actual_plr) - 1.0;
  const double multiplier =
      (static_cast<double>(packet_size) * kept_full + m_last) /
      static_cast<double>(m_count);
  return {multiplier, actual_plr};
}

std::vector<std::uint8_t> serialize_packet(const Packet& p) {
  std::vector<std::uint8_t> out = serialize_header(p.header);
  put_u32(out, p.index);
  put_u16(out, static_cast<std::uint16_t>(p.discard_offsets.size()));
  for (std::uint16_t off : p.discard_offsets) put_u16(out, off);
  out.insert(out.end(), p.payload.begin(), p.payload.end());
  return out;
}

Packet parse_packet(const std::uint8_t* data, std::size_t len) {
  Packet p;
  p.header = parse_header(data, len);
  Reader r{data + StreamHeader::kWireSize, len - StreamHeader::kWireSize};
  p.index = r.u32();
  const std::uint16_t discard_count = r.u16();
  p.discard_offsets.resize(discard_count);
  for (auto& off : p.discard_offsets) off = r.u16();
  if (p.index >= p.header.packet_count())
    throw std::invalid_argument("parse_packet: index out of range");
  const Eigen::Index expect =
      (static_cast<Eigen::Index>(p.index) == p.header.packet_count() - 1)
          ? p.header.last_packet_size()
          : static_cast<Eigen::Index>(p.header.packet_size);
  r.need(static_cast<std::size_t>(expect));
  if (r.left != static_cast<std::size_t>(expect))
    throw std::invalid_argument("parse_packet: trailing bytes");
  p.payload.assign(r.p, r.p + expect);
  return p;
}

std::vector<std::uint8_t> serialize_packets(const std::vector<Packet>& packets) {
  std::vector<std::uint8_t> out{'S', 'M', 'C', 'P'};
  put_u32(out, static_cast<std::uint32_t>(packets.size()));
  for (const Packet& p : packets) {
    const std::vector<std::uint8_t> bytes = serialize_packet(p);
    put_u32(out, static_cast<std::uint32_t>(bytes.size()));
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  return out;
}

std::vector<Packet> parse_packets(const std::uint8_t* data, std::size_t len) {
  Reader r{data, len};
  r.need(4);
  if (std::memcmp(r.p, "SMCP", 4) != 0)
    throw std::invalid_argument("parse_packets: bad magic");
  r.p += 4;
  r.left -= 4;
  const std::uint32_t count = r.u32();
  std::vector<Packet> packets;
  packets.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t sz = r.u32();
    r.need(sz);
    packets.push_back(parse_packet(r.p, sz));
    r.p += sz;
    r.left -= sz;
  }
  if (r.left != 0) throw std::invalid_argument("parse_packets: trailing bytes");
  return packets;
}

}  // namespace smc
