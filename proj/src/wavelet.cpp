#include "posa/wavelet.hpp"

#include <string>

#include "posa/errors.hpp"
#include "posa/kernels.hpp"

namespace posa {
namespace {

// Daubechies extremal-phase, 4 vanishing moments (8 taps), analysis lowpass.
constexpr double kDb4[8] = {
    -0.010597401784997278, 0.032883011666982945, 0.030841381835986965, -0.18703481171888114,
    -0.027983769416983850, 0.630880767929590400, 0.714846570552541500, 0.230377813308855230,
};

// Periodized analysis along the column direction: each output row is a
// weighted sum of whole input rows, so the inner loop is an axpy.
void analyze_columns(const Image& in, const WaveletBasis& basis, Image& lo, Image& hi) {
  const std::size_t rows = in.rows();
  const std::size_t half = rows / 2;
  const auto& h = basis.lowpass();
  const auto& g = basis.highpass();
  lo = Image(half, in.cols());
  hi = Image(half, in.cols());
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t n = 0; n < h.size(); ++n) {
      const auto src = in.row((2 * k + n) % rows);
      kernels::axpy(h[n], src, lo.row(k));
      kernels::axpy(g[n], src, hi.row(k));
    }
  }
}

// Transpose of analyze_columns; the filter bank is orthonormal so this is its inverse.
Image synthesize_columns(const Image& lo, const Image& hi, const WaveletBasis& basis) {
  const std::size_t half = lo.rows();
  const std::size_t rows = 2 * half;
  const auto& h = basis.lowpass();
  const auto& g = basis.highpass();
  Image out(rows, lo.cols());
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t n = 0; n < h.size(); ++n) {
      auto dst = out.row((2 * k + n) % rows);
      kernels::axpy(h[n], lo.row(k), dst);
      kernels::axpy(g[n], hi.row(k), dst);
    }
  }
  return out;
}

void check_band_shapes(const Subbands& b) {
  if (!b.ll.same_shape(b.lh) || !b.ll.same_shape(b.hl) || !b.ll.same_shape(b.hh)) {
    throw DimensionError("idwt2: subbands have mismatched dimensions");
  }
  if (b.ll.empty()) throw DimensionError("idwt2: empty subbands");
}

}  // namespace

WaveletBasis::WaveletBasis(WaveletName name, std::vector<double> lowpass)
    : name_(name), lowpass_(std::move(lowpass)) {
  const std::size_t len = lowpass_.size();
  highpass_.resize(len);
  for (std::size_t n = 0; n < len; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    highpass_[n] = sign * lowpass_[len - 1 - n];
  }
}

WaveletBasis WaveletBasis::db1() {
  const double s = 0.70710678118654752440;
  return WaveletBasis(WaveletName::db1, {s, s});
}

WaveletBasis WaveletBasis::db4() {
  return WaveletBasis(WaveletName::db4, std::vector<double>(std::begin(kDb4), std::end(kDb4)));
}

WaveletBasis WaveletBasis::from_name(WaveletName name) {
  return name == WaveletName::db4 ? db4() : db1();
}

std::optional<WaveletBasis> WaveletBasis::parse(std::string_view name) {
  if (name == "db1" || name == "haar") return db1();
  if (name == "db4") return db4();
  return std::nullopt;
}

std::string_view WaveletBasis::label() const { return name_ == WaveletName::db4 ? "db4" : "db1"; }

Subbands dwt2(const Image& img, const WaveletBasis& basis) {
  if (img.rows() % 2 != 0 || img.cols() % 2 != 0) {
    throw DimensionError("dwt2: image dimensions must be even, got " + std::to_string(img.rows()) + "x" +
                         std::to_string(img.cols()));
  }
  if (img.rows() < basis.length() || img.cols() < basis.length()) {
    throw DimensionError("dwt2: image " + std::to_string(img.rows()) + "x" + std::to_string(img.cols()) +
                         " is smaller than the " + std::string(basis.label()) + " filter");
  }

  // Filter along rows by transposing, running the column pass, transposing back.
  Image lo_t, hi_t;
  analyze_columns(img.transposed(), basis, lo_t, hi_t);
  const Image lo = lo_t.transposed();
  const Image hi = hi_t.transposed();

  Subbands out;
  analyze_columns(lo, basis, out.ll, out.lh);
  analyze_columns(hi, basis, out.hl, out.hh);
  return out;
}

Image idwt2(const Subbands& bands, const WaveletBasis& basis) {
  check_band_shapes(bands);
  const Image lo = synthesize_columns(bands.ll, bands.lh, basis);
  const Image hi = synthesize_columns(bands.hl, bands.hh, basis);
  return synthesize_columns(lo.transposed(), hi.transposed(), basis).transposed();
}

}  // namespace posa
