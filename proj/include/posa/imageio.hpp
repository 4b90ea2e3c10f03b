#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "posa/image.hpp"
#include "posa/metrics.hpp"

namespace posa {

enum class RasterFormat { pgm8, pgm16, png_gray8, png_gray16 };

struct Raster {
  Image image;
  RasterFormat format = RasterFormat::pgm8;
  int maxval = 255;
};

int format_maxval(RasterFormat format);

// Reads a binary PGM (P5, 8- or 16-bit big-endian) or a grayscale PNG.
// Throws IoError when the file cannot be opened and ParseError for
// malformed, truncated or unsupported content.
Raster read_raster(const std::filesystem::path& path);
Image read_image(const std::filesystem::path& path);

// Pixels are clamped to [0, maxval] and rounded half away from zero.
void write_image(const Image& img, const std::filesystem::path& path, RasterFormat format);
std::vector<unsigned char> encode_pgm(const Image& img, RasterFormat format);
std::vector<unsigned char> quantize(const Image& img, int maxval);

// Edge maps on disk are images where any non-zero pixel is an edge.
EdgeMap read_edge_map(const std::filesystem::path& path);

using ReportRow = std::pair<std::string, MetricsReport>;

// CSV with header filter,MSD,NMV,NSD,ENL,DR,FOM and a trailing PSNR column
// when any row carries one. Six significant digits, '.' decimal separator,
// '\n' line endings, absent metrics as empty fields, infinite PSNR as "inf".
std::string format_report(const std::vector<ReportRow>& rows);
void write_report(const std::vector<ReportRow>& rows, const std::filesystem::path& path);

}  // namespace posa
