#include "posa/imageio.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>

#include "posa/errors.hpp"

namespace posa {
namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

class HeaderReader {
 public:
  HeaderReader(const std::vector<unsigned char>& bytes, const std::string& name) : bytes_(bytes), name_(name) {}

  // Skips whitespace and '#' comments, then reads a decimal integer.
  long next_int(const char* field) {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) fail(std::string(field) + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected ") + field, start);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the samples.
  void single_space() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) fail("expected whitespace after maxval", pos_);
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    throw ParseError(name_ + ": " + what + " at byte offset " + std::to_string(offset));
  }

 private:
  const std::vector<unsigned char>& bytes_;
  std::string name_;
  std::size_t pos_ = 2;
};

Raster parse_pgm(const std::vector<unsigned char>& bytes, const std::string& name) {
  HeaderReader header(bytes, name);
  const long width = header.next_int("width");
  const long height = header.next_int("height");
  const long maxval = header.next_int("maxval");
  if (width <= 0 || height <= 0) header.fail("image dimensions must be positive", header.pos());
  if (maxval <= 0 || maxval > 65535) header.fail("maxval must be in 1..65535", header.pos());
  header.single_space();

  const std::size_t rows = static_cast<std::size_t>(height);
  const std::size_t cols = static_cast<std::size_t>(width);
  const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
  const std::size_t need = rows * cols * sample_bytes;
  const std::size_t offset = header.pos();
  if (bytes.size() - offset < need) {
    throw ParseError(name + ": truncated pixel data at byte offset " + std::to_string(bytes.size()) + ", expected " +
                     std::to_string(need) + " sample bytes from offset " + std::to_string(offset));
  }

  Raster raster;
  raster.maxval = static_cast<int>(maxval);
  raster.format = sample_bytes == 2 ? RasterFormat::pgm16 : RasterFormat::pgm8;
  raster.image = Image(rows, cols);
  auto px = raster.image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const std::size_t at = offset + i * sample_bytes;
    px[i] = sample_bytes == 2 ? static_cast<double>((bytes[at] << 8) | bytes[at + 1]) : static_cast<double>(bytes[at]);
  }
  return raster;
}

struct PngReadSource {
  const std::vector<unsigned char>* bytes;
  std::size_t pos;
};

void png_read_from_memory(png_structp png, png_bytep out, png_size_t len) {
  auto* src = static_cast<PngReadSource*>(png_get_io_ptr(png));
  if (src->pos + len > src->bytes->size()) png_error(png, "truncated PNG stream");
  std::copy_n(src->bytes->data() + src->pos, len, out);
  src->pos += len;
}

void png_error_to_longjmp(png_structp png, png_const_charp msg) {
  auto* buffer = static_cast<std::string*>(png_get_error_ptr(png));
  if (buffer != nullptr) *buffer = msg;
  png_longjmp(png, 1);
}

void png_ignore_warning(png_structp, png_const_charp) {}

Raster parse_png(const std::vector<unsigned char>& bytes, const std::string& name) {
  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, png_error_to_longjmp, png_ignore_warning);
  if (png == nullptr) throw IoError(name + ": libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  PngReadSource src{&bytes, 0};
  Raster raster;
  std::vector<unsigned char> data;
  std::vector<png_bytep> row_ptrs;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw ParseError(name + ": " + (message.empty() ? std::string("malformed PNG") : message));
  }
  png_set_read_fn(png, &src, png_read_from_memory);
  png_read_info(png, info);
  const png_uint_32 width = png_get_image_width(png, info);
  const png_uint_32 height = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    png_error(png, "unsupported PNG colour type (only grayscale without alpha)");
  }
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  const std::size_t rowbytes = png_get_rowbytes(png, info);
  data.resize(rowbytes * height);
  row_ptrs.resize(height);
  for (png_uint_32 r = 0; r < height; ++r) row_ptrs[r] = data.data() + r * rowbytes;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  raster.format = depth == 16 ? RasterFormat::png_gray16 : RasterFormat::png_gray8;
  raster.maxval = depth == 16 ? 65535 : 255;
  raster.image = Image(height, width);
  for (png_uint_32 r = 0; r < height; ++r) {
    for (png_uint_32 c = 0; c < width; ++c) {
      double v = 0.0;
      if (depth == 16) {
        const unsigned char* p = data.data() + r * rowbytes + 2 * c;
        v = static_cast<double>((p[0] << 8) | p[1]);
      } else {
        v = data[r * rowbytes + c];
      }
      raster.image(r, c) = v;
    }
  }
  return raster;
}

void write_png(const Image& img, const std::filesystem::path& path, int depth) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> fp(std::fopen(path.string().c_str(), "wb"), std::fclose);
  if (!fp) throw IoError("cannot write " + path.string());
  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, png_error_to_longjmp, png_ignore_warning);
  if (png == nullptr) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  const std::vector<unsigned char> samples = quantize(img, depth == 16 ? 65535 : 255);
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("writing " + path.string() + ": " + message);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.cols()), static_cast<png_uint_32>(img.rows()), depth,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t rowbytes = img.cols() * static_cast<std::size_t>(depth / 8);
  for (std::size_t r = 0; r < img.rows(); ++r) {
    png_write_row(png, const_cast<png_bytep>(samples.data() + r * rowbytes));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void format_number(std::string& out, double v) {
  if (std::isinf(v)) {
    out += v > 0 ? "inf" : "-inf";
    return;
  }
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 6);
  out.append(buf.data(), res.ptr);
}

void append_field(std::string& out, const std::optional<double>& v) {
  out += ',';
  if (v) format_number(out, *v);
}

}  // namespace

int format_maxval(RasterFormat format) {
  return format == RasterFormat::pgm16 || format == RasterFormat::png_gray16 ? 65535 : 255;
}

Raster read_raster(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  const std::string name = path.string();
  static constexpr unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(std::begin(kPngSig), std::end(kPngSig), bytes.begin())) {
    return parse_png(bytes, name);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return parse_pgm(bytes, name);
  if (bytes.size() >= 2 && bytes[0] == 'P') {
    throw ParseError(name + ": unsupported netpbm variant P" + std::string(1, static_cast<char>(bytes[1])) +
                     " at byte offset 0");
  }
  throw ParseError(name + ": unrecognized raster format at byte offset 0");
}

Image read_image(const std::filesystem::path& path) { return read_raster(path).image; }

std::vector<unsigned char> quantize(const Image& img, int maxval) {
  const bool wide = maxval > 255;
  std::vector<unsigned char> out;
  out.reserve(img.size() * (wide ? 2 : 1));
  for (double v : img.pixels()) {
    const double q = std::isnan(v) ? 0.0 : std::round(std::clamp(v, 0.0, static_cast<double>(maxval)));
    const auto s = static_cast<unsigned>(q);
    if (wide) {
      out.push_back(static_cast<unsigned char>(s >> 8));
      out.push_back(static_cast<unsigned char>(s & 0xff));
    } else {
      out.push_back(static_cast<unsigned char>(s));
    }
  }
  return out;
}

std::vector<unsigned char> encode_pgm(const Image& img, RasterFormat format) {
  const int maxval = format_maxval(format);
  const std::string header =
      "P5\n" + std::to_string(img.cols()) + " " + std::to_string(img.rows()) + "\n" + std::to_string(maxval) + "\n";
  std::vector<unsigned char> out(header.begin(), header.end());
  const auto samples = quantize(img, maxval);
  out.insert(out.end(), samples.begin(), samples.end());
  return out;
}

void write_image(const Image& img, const std::filesystem::path& path, RasterFormat format) {
  if (img.empty()) throw DimensionError("write_image: empty image");
  if (format == RasterFormat::png_gray8 || format == RasterFormat::png_gray16) {
    write_png(img, path, format == RasterFormat::png_gray16 ? 16 : 8);
    return;
  }
  const auto bytes = encode_pgm(img, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

EdgeMap read_edge_map(const std::filesystem::path& path) {
  const Image img = read_image(path);
  EdgeMap edges(img.rows(), img.cols());
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      if (img(r, c) != 0.0) edges.set(r, c);
    }
  }
  return edges;
}

std::string format_report(const std::vector<ReportRow>& rows) {
  const bool with_psnr = std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.second.has_psnr(); });
  std::string out = "filter,MSD,NMV,NSD,ENL,DR,FOM";
  if (with_psnr) out += ",PSNR";
  out += '\n';
  for (const auto& [label, m] : rows) {
    out += label;
    append_field(out, m.msd);
    append_field(out, m.nmv);
    append_field(out, m.nsd);
    append_field(out, m.enl);
    append_field(out, m.dr);
    append_field(out, m.fom);
    if (with_psnr) {
      out += ',';
      if (m.psnr_infinite) {
        out += "inf";
      } else if (m.psnr_db) {
        format_number(out, *m.psnr_db);
      }
    }
    out += '\n';
  }
  return out;
}

void write_report(const std::vector<ReportRow>& rows, const std::filesystem::path& path) {
  const std::string text = format_report(rows);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace posa
