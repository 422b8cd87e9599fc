#include "smcodec/pgm.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smc {

namespace {

// Next token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) continue;
    tok.push_back(static_cast<char>(c));
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#')
      tok.push_back(static_cast<char>(in.get()));
    return tok;
  }
  throw std::invalid_argument("pgm: truncated header");
}

long parse_dim(const std::string& tok) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("pgm: malformed header field '" + tok + "'");
  }
  if (pos != tok.size() || v <= 0)
    throw std::invalid_argument("pgm: malformed header field '" + tok + "'");
  return v;
}

}  // namespace

ImageBuffer load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("pgm: cannot open " + path);
  const std::string magic = next_token(in);
  if (magic == "P2")
    throw std::invalid_argument("pgm: ASCII (P2) input not supported: " + path);
  if (magic != "P5")
    throw std::invalid_argument("pgm: not a P5 file: " + path);
  const long width = parse_dim(next_token(in));
  const long height = parse_dim(next_token(in));
  const long maxval = parse_dim(next_token(in));
  if (maxval != 255)
    throw std::invalid_argument("pgm: only maxval 255 supported: " + path);
  // Exactly one whitespace byte separates the header from the raster.
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep))
    throw std::invalid_argument("pgm: missing raster separator: " + path);
  ImageBuffer img(width, height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.size()))
    throw std::invalid_argument("pgm: truncated raster: " + path);
  return img;
}

void save_pgm(const ImageBuffer& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("pgm: cannot write " + path);
  out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.size()));
  if (!out) throw std::invalid_argument("pgm: write failed: " + path);
}

}  // namespace smc
