#include "smcodec/sweep.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "smcodec/pgm.hpp"
#include "smcodec/rng.hpp"

namespace smc {

namespace {

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Status strings land in a CSV cell; keep them comma-free.
std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  return s;
}

std::uint64_t hash_double(std::uint64_t h, double v) {
  return hash_combine(h, std::bit_cast<std::uint64_t>(v));
}

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string fmt_psnr(double v) {
  if (std::isinf(v)) return "inf";
  return fmt(v, "%.4f");
}

}  // namespace

std::uint64_t row_seed(const ExperimentSpec& spec, const std::string& image_name,
                       int block_size, double sr, double plr, int packet_size,
                       int trial) {
  std::uint64_t h = spec.base_seed;
  h = hash_bytes(h, {image_name.data(), image_name.size()});
  h = hash_combine(h, static_cast<std::uint64_t>(spec.transform));
  h = hash_combine(h, static_cast<std::uint64_t>(block_size));
  h = hash_double(h, sr);
  h = hash_double(h, plr);
  h = hash_combine(h, static_cast<std::uint64_t>(packet_size));
  h = hash_combine(h, static_cast<std::uint64_t>(trial));
  return h;
}

std::string csv_header(bool timing) {
  std::string s =
      "image,transform,block_size,levels,sr,plr,packet_size,channel,quantize,"
      "trial,seed,psnr_db,gamma,actual_sr,actual_plr,iterations,status";
  if (timing) s += ",wall_ms";
  return s + "\n";
}

std::string csv_line(const ResultRow& r, bool timing) {
  std::string s;
  s += r.image;
  s += ',';
  s += transform_name(r.transform);
  s += ',' + std::to_string(r.block_size);
  s += ',' + std::to_string(r.levels);
  s += ',' + fmt(r.sr, "%g");
  s += ',' + fmt(r.plr, "%g");
  s += ',' + std::to_string(r.packet_size);
  s += ',';
  s += r.channel == ChannelModel::CountExact ? "count" : "iid";
  s += ',';
  s += r.quantize ? "1" : "0";
  s += ',' + std::to_string(r.trial);
  s += ',' + std::to_string(r.seed);
  s += ',' + fmt_psnr(r.psnr_db);
  s += ',' + fmt(r.gamma, "%.6f");
  s += ',' + fmt(r.actual_sr, "%.6f");
  s += ',' + fmt(r.actual_plr, "%.6f");
  s += ',' + std::to_string(r.iterations);
  s += ',' + r.status;
  if (timing) s += ',' + fmt(r.wall_ms, "%.1f");
  return s + "\n";
}

std::vector<ResultRow> run_sweep(const ExperimentSpec& spec) {
  if (spec.image_paths.empty() || spec.block_sizes.empty() ||
      spec.srs.empty() || spec.plrs.empty() || spec.packet_sizes.empty() ||
      spec.trials < 1)
    throw std::invalid_argument("run_sweep: empty grid");

  std::filesystem::create_directories(spec.out_dir);
  std::vector<ResultRow> rows;

  for (const std::string& path : spec.image_paths) {
    const std::string name = basename_of(path);
    ImageBuffer original;
    bool image_ok = true;
    std::string image_err;
    try {
      original = load_pgm(path);
    } catch (const std::exception& e) {
      image_ok = false;
      image_err = sanitize(std::string("error:") + e.what());
    }
    std::uint64_t img_hash = hash_bytes(spec.base_seed, {name.data(), name.size()});
    const std::uint64_t r_seed = hash_combine(img_hash, 1);

    for (int block : spec.block_sizes)
      for (double sr : spec.srs)
        for (double plr : spec.plrs)
          for (int m : spec.packet_sizes)
            for (int trial = 0; trial < spec.trials; ++trial) {
              ResultRow row;
              row.image = name;
              row.transform = spec.transform;
              row.block_size = block;
              row.levels = spec.levels > 0
                               ? spec.levels
                               : (image_ok ? default_levels(original.width(),
                                                            original.height())
                                           : 0);
              row.sr = sr;
              row.plr = plr;
              row.packet_size = m;
              row.channel = spec.channel;
              row.quantize = spec.quantize;
              row.trial = trial;
              row.seed = row_seed(spec, name, block, sr, plr, m, trial);
              const auto t0 = std::chrono::steady_clock::now();
              if (!image_ok) {
                row.status = image_err;
                rows.push_back(row);
                continue;
              }
              try {
                const std::uint64_t d_seed = hash_combine(row.seed, 2);
                const std::uint64_t ch_seed = hash_combine(row.seed, 3);
                CipherKey key{r_seed, KeyMode::Standard, std::nullopt};
                const ImageBuffer cipher_img = encrypt(original, key);
                SamplingConfig cfg;
                cfg.transform = spec.transform;
                cfg.block_size = block;
                cfg.sr = sr;
                cfg.d_seed = d_seed;
                cfg.packet_size = static_cast<std::uint32_t>(m);
                auto [y, header] = sample(cipher_img, cfg);

                SolverOptions opts;
                opts.tau = spec.tau;
                opts.levels = spec.levels;
                opts.max_iters = spec.max_iters;
                opts.rel_tol = spec.rel_tol;

                DecodeResult dec;
                if (spec.quantize) {
                  QuantizedStream qs = quantize(y, header);
                  row.gamma = qs.gamma();
                  std::vector<Packet> packets = packetize(qs);
                  std::vector<Packet> got =
                      transmit(packets, {plr, spec.channel, ch_seed});
                  dec = joint_decode(got, key, opts, &original);
                } else {
                  row.gamma = 0.0;
                  const std::vector<bool> alive = survival_mask(
                      header.packet_count(), {plr, spec.channel, ch_seed});
                  std::vector<std::uint32_t> received;
                  for (Eigen::Index p = 0; p < header.packet_count(); ++p) {
                    if (!alive[static_cast<std::size_t>(p)]) continue;
                    const Eigen::Index begin = p * header.packet_size;
                    const Eigen::Index end = std::min<Eigen::Index>(
                        begin + header.packet_size, header.m_count);
                    for (Eigen::Index i = begin; i < end; ++i)
                      received.push_back(static_cast<std::uint32_t>(i));
                  }
                  Eigen::VectorXd values(
                      static_cast<Eigen::Index>(received.size()));
                  for (Eigen::Index j = 0; j < values.size(); ++j)
                    values[j] = y[static_cast<Eigen::Index>(received[j])];
                  dec = decode_measurements(header, received, values, key,
                                            opts, &original);
                }
                row.psnr_db = dec.psnr_vs_original.value_or(0.0);
                row.iterations = dec.iterations;
                auto [mult, aplr] =
                    effective_rates(header.m_count, header.packet_size, plr);
                row.actual_sr = sr * mult;
                row.actual_plr = aplr;
                if (spec.save_images) {
                  char fname[256];
                  std::snprintf(fname, sizeof(fname),
                                "%s_%s_b%d_sr%.3f_plr%.3f_m%d_t%d.pgm",
                                name.c_str(), transform_name(spec.transform),
                                block, sr, plr, m, trial);
                  save_pgm(dec.image,
                           (std::filesystem::path(spec.out_dir) / fname).string());
                }
              } catch (const std::exception& e) {
                row.status = sanitize(std::string("error:") + e.what());
              }
              const auto t1 = std::chrono::steady_clock::now();
              row.wall_ms =
                  std::chrono::duration<double, std::milli>(t1 - t0).count();
              rows.push_back(row);
            }
  }

  std::ofstream csv(std::filesystem::path(spec.out_dir) / "sweep.csv",
                    std::ios::binary);
  if (!csv) throw std::runtime_error("run_sweep: cannot write sweep.csv");
  csv << csv_header(spec.timing);
  for (const ResultRow& r : rows) csv << csv_line(r, spec.timing);
  return rows;
}

}  // namespace smc
