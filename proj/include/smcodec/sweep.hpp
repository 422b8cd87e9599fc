#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smcodec/channel.hpp"
#include "smcodec/codec.hpp"
#include "smcodec/recon.hpp"

namespace smc {

// Full factorial experiment grid; one result row per (cell, trial).
struct ExperimentSpec {
  std::vector<std::string> image_paths;
  TransformKind transform = TransformKind::BDCT;
  std::vector<int> block_sizes{32};
  std::vector<double> srs{0.6};
  std::vector<double> plrs{0.0};
  std::vector<int> packet_sizes{100};
  int trials = 3;
  std::uint64_t base_seed = 1;
  bool quantize = true;
  ChannelModel channel = ChannelModel::CountExact;
  std::string out_dir = ".";
  int levels = 0;        // <= 0: default depth
  double tau = 0.0;      // <= 0: solver default
  int max_iters = 400;
  double rel_tol = 1e-5;
  bool save_images = true;
  bool timing = false;   // append a wall_ms column (breaks byte determinism)
};

struct ResultRow {
  std::string image;
  TransformKind transform = TransformKind::BDCT;
  int block_size = 32;
  int levels = 0;
  double sr = 0.0;
  double plr = 0.0;
  int packet_size = 0;
  ChannelModel channel = ChannelModel::CountExact;
  bool quantize = true;
  int trial = 0;
  std::uint64_t seed = 0;
  double psnr_db = 0.0;
  double gamma = 0.0;
  double actual_sr = 0.0;
  double actual_plr = 0.0;
  int iterations = 0;
  std::string status = "ok";
  double wall_ms = 0.0;
};

std::string csv_header(bool timing);
std::string csv_line(const ResultRow& row, bool timing);

// Runs the grid, writes <out_dir>/sweep.csv (and reconstructed PGMs when
// save_images is set) and returns the rows in grid order. Stage failures are
// recorded in the row's status and the sweep continues.
std::vector<ResultRow> run_sweep(const ExperimentSpec& spec);

// Seed derivation used by the sweep, exposed for reproducing single cells.
std::uint64_t row_seed(const ExperimentSpec& spec, const std::string& image_name,
                       int block_size, double sr, double plr, int packet_size,
                       int trial);

}  // namespace smc
