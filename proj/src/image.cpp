#include "posa/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "posa/errors.hpp"
#include "posa/kernels.hpp"

namespace posa {

Image::Image(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {}

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> pixels)
    : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
  if (pixels_.size() != rows * cols) {
    throw DimensionError("pixel count " + std::to_string(pixels_.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Image Image::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> px;
  px.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged image literal");
    px.insert(px.end(), row.begin(), row.end());
  }
  return Image(r, c, std::move(px));
}

bool Image::all_finite() const {
  return std::all_of(pixels_.begin(), pixels_.end(), [](double v) { return std::isfinite(v); });
}

Image Image::transposed() const {
  Image out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Moments image_stats(const Image& img) {
  if (img.empty()) throw DimensionError("image_stats: empty image");
  const double n = static_cast<double>(img.size());
  const double mean = kernels::sum(img.pixels()) / n;
  return {mean, kernels::sum_sq_dev(img.pixels(), mean) / n};
}

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace posa
