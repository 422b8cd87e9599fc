#pragma once

#include <string>

#include "smcodec/image.hpp"

namespace smc {

// Binary PGM (P5, maxval 255) only; ASCII P2 and other maxvals are rejected.
ImageBuffer load_pgm(const std::string& path);
void save_pgm(const ImageBuffer& img, const std::string& path);

}  // namespace smc
