#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace posa {

// Row-major real raster. Pixels are doubles regardless of the bit depth of
// the file they came from; quantization only happens in imageio.
class Image {
 public:
  Image() = default;
  Image(std::size_t rows, std::size_t cols, double fill = 0.0);
  Image(std::size_t rows, std::size_t cols, std::vector<double> pixels);

  // Convenience for tests and small literals: {{1, 2}, {3, 4}}.
  static Image from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return pixels_.size(); }
  bool empty() const { return pixels_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return pixels_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return pixels_[r * cols_ + c]; }

  std::span<double> pixels() { return pixels_; }
  std::span<const double> pixels() const { return pixels_; }
  std::span<double> row(std::size_t r) { return {pixels_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {pixels_.data() + r * cols_, cols_}; }

  bool same_shape(const Image& other) const { return rows_ == other.rows_ && cols_ == other.cols_; }
  bool all_finite() const;

  Image transposed() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> pixels_;
};

// One-level DWT output; every band is (R/2) x (C/2) of the source.
struct Subbands {
  Image ll;
  Image lh;
  Image hl;
  Image hh;
};

class EdgeMap {
 public:
  EdgeMap() = default;
  EdgeMap(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool operator()(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool edge = true) { bits_[r * cols_ + c] = edge ? 1 : 0; }
  std::size_t count() const;

  friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<unsigned char> bits_;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Population mean and variance (divides by R*C).
Moments image_stats(const Image& img);

// Throws DimensionError unless both images have the same shape.
void require_same_shape(const Image& a, const Image& b, const char* what);

}  // namespace posa
