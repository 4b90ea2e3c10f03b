#include "posa/despeckle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "posa/errors.hpp"
#include "posa/projection.hpp"

namespace posa {
namespace {

constexpr double kRoundoffBandRatio = 1e-12;

void check_kernel(int kernel) {
  if (kernel < 3 || kernel % 2 == 0) {
    throw ParameterError("kernel must be an odd integer >= 3, got " + std::to_string(kernel));
  }
}

void check_looks(double looks) {
  if (!(looks >= 1.0)) throw ParameterError("looks must be >= 1, got " + std::to_string(looks));
}

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
  if (i < 0) return 0;
  if (static_cast<std::size_t>(i) >= n) return n - 1;
  return static_cast<std::size_t>(i);
}

// Gathers the kernel x kernel neighborhood of (r, c) with replicated edges.
void gather(const Image& img, std::size_t r, std::size_t c, int kernel, std::vector<double>& out) {
  const std::ptrdiff_t half = kernel / 2;
  out.clear();
  for (std::ptrdiff_t dr = -half; dr <= half; ++dr) {
    const std::size_t rr = clamp_index(static_cast<std::ptrdiff_t>(r) + dr, img.rows());
    for (std::ptrdiff_t dc = -half; dc <= half; ++dc) {
      out.push_back(img(rr, clamp_index(static_cast<std::ptrdiff_t>(c) + dc, img.cols())));
    }
  }
}

Moments window_moments(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += v;
  const double mean = s / static_cast<double>(w.size());
  double ss = 0.0;
  for (double v : w) ss += (v - mean) * (v - mean);
  return {mean, ss / static_cast<double>(w.size())};
}

// Shared body of the Lee and Kuan filters: out = mean + W * (x - mean).
template <typename Weight>
Image local_statistics_filter(const Image& img, int kernel, double looks, Weight weight) {
  check_kernel(kernel);
  check_looks(looks);
  const double cu2 = 1.0 / looks;
  Image out(img.rows(), img.cols());
  std::vector<double> window;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      const double x = img(r, c);
      gather(img, r, c, kernel, window);
      const auto [mean, var] = window_moments(window);
      if (mean == 0.0) {
        out(r, c) = x;
        continue;
      }
      double w = 0.0;
      if (var > 0.0) {
        const double ci2 = var / (mean * mean);
        w = std::clamp(weight(cu2, ci2), 0.0, 1.0);
      }
      out(r, c) = mean + w * (x - mean);
    }
  }
  return out;
}

}  // namespace

FilterSpec FilterSpec::defaults(FilterKind kind) {
  FilterSpec spec;
  spec.kind = kind;
  spec.homomorphic = kind == FilterKind::lee || kind == FilterKind::kuan || kind == FilterKind::frost;
  return spec;
}

std::string_view filter_name(FilterKind kind) {
  switch (kind) {
    case FilterKind::posashrink: return "posashrink";
    case FilterKind::median: return "median";
    case FilterKind::lee: return "lee";
    case FilterKind::kuan: return "kuan";
    case FilterKind::frost: return "frost";
    case FilterKind::visu_hard: return "visu_hard";
    case FilterKind::visu_soft: return "visu_soft";
    case FilterKind::visu_semisoft: return "visu_semisoft";
  }
  return "unknown";
}

std::optional<FilterKind> parse_filter(std::string_view name) {
  if (name == "posa") return FilterKind::posashrink;
  for (auto kind : {FilterKind::posashrink, FilterKind::median, FilterKind::lee, FilterKind::kuan,
                    FilterKind::frost, FilterKind::visu_hard, FilterKind::visu_soft, FilterKind::visu_semisoft}) {
    if (filter_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_local_filter(FilterKind kind) {
  return kind == FilterKind::median || kind == FilterKind::lee || kind == FilterKind::kuan ||
         kind == FilterKind::frost;
}

bool is_wavelet_filter(FilterKind kind) { return !is_local_filter(kind); }

void validate(const FilterSpec& spec) {
  if (is_local_filter(spec.kind)) check_kernel(spec.kernel);
  check_looks(spec.looks);
  if (!(spec.damping > 0.0)) throw ParameterError("damping must be > 0");
  if (spec.homomorphic && is_wavelet_filter(spec.kind)) {
    throw ParameterError(std::string(filter_name(spec.kind)) + " does not take a homomorphic wrapper");
  }
}

Image posashrink(const Image& img, const WaveletBasis& basis) {
  Subbands bands = dwt2(img, basis);
  // Detail bands at round-off level (flat input) are exactly zero in exact
  // arithmetic; normalizing them would inject unit-norm noise.
  const double floor = kRoundoffBandRatio * frob_norm(bands.ll);
  for (Image* band : {&bands.lh, &bands.hl, &bands.hh}) {
    if (frob_norm(*band) <= floor) *band = Image(band->rows(), band->cols());
  }
  MatrixSequence details = span_cascade({bands.ll, bands.lh, bands.hl, bands.hh}, LastElement::raw);
  return idwt2({bands.ll, std::move(details[0]), std::move(details[1]), std::move(details[2])}, basis);
}

Image median_filter(const Image& img, int kernel) {
  check_kernel(kernel);
  Image out(img.rows(), img.cols());
  std::vector<double> window;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      gather(img, r, c, kernel, window);
      auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
      std::nth_element(window.begin(), mid, window.end());
      out(r, c) = *mid;
    }
  }
  return out;
}

Image lee_filter(const Image& img, int kernel, double looks) {
  return local_statistics_filter(img, kernel, looks, [](double cu2, double ci2) { return 1.0 - cu2 / ci2; });
}

Image kuan_filter(const Image& img, int kernel, double looks) {
  return local_statistics_filter(img, kernel, looks,
                                 [](double cu2, double ci2) { return (1.0 - cu2 / ci2) / (1.0 + cu2); });
}

Image frost_filter(const Image& img, int kernel, double damping) {
  check_kernel(kernel);
  if (!(damping > 0.0)) throw ParameterError("damping must be > 0");
  const int half = kernel / 2;
  std::vector<double> distance;
  for (int dr = -half; dr <= half; ++dr) {
    for (int dc = -half; dc <= half; ++dc) distance.push_back(std::hypot(dr, dc));
  }

  Image out(img.rows(), img.cols());
  std::vector<double> window;
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      gather(img, r, c, kernel, window);
      const auto [mean, var] = window_moments(window);
      const double ci2 = mean != 0.0 ? var / (mean * mean) : 0.0;
      double num = 0.0;
      double den = 0.0;
      for (std::size_t i = 0; i < window.size(); ++i) {
        const double m = std::exp(-damping * ci2 * distance[i]);
        num += m * window[i];
        den += m;
      }
      out(r, c) = num / den;
    }
  }
  return out;
}

double universal_threshold(const Subbands& bands) {
  std::vector<double> mag(bands.hh.pixels().begin(), bands.hh.pixels().end());
  for (double& v : mag) v = std::abs(v);
  std::sort(mag.begin(), mag.end());
  const std::size_t n = mag.size();
  const double median = n % 2 == 1 ? mag[n / 2] : 0.5 * (mag[n / 2 - 1] + mag[n / 2]);
  const double sigma = median / 0.6745;
  const double count = static_cast<double>(bands.lh.size() + bands.hl.size() + bands.hh.size());
  return sigma * std::sqrt(2.0 * std::log(count));
}

double shrink(double w, ThresholdRule rule, double t) {
  const double a = std::abs(w);
  switch (rule) {
    case ThresholdRule::hard:
      return a <= t ? 0.0 : w;
    case ThresholdRule::soft:
      return std::copysign(std::max(a - t, 0.0), w);
    case ThresholdRule::semisoft:
      break;
  }
  if (t <= 0.0) return w;
  if (a <= t) return 0.0;
  if (a > 2.0 * t) return w;
  return std::copysign(2.0 * t * (a - t) / t, w);
}

Image wavelet_threshold(const Image& img, ThresholdRule rule, const WaveletBasis& basis) {
  Subbands bands = dwt2(img, basis);
  const double t = universal_threshold(bands);
  for (Image* band : {&bands.lh, &bands.hl, &bands.hh}) {
    for (double& w : band->pixels()) w = shrink(w, rule, t);
  }
  return idwt2(bands, basis);
}

Image homomorphic_wrap(const std::function<Image(const Image&)>& filter, const Image& img) {
  Image logged(img.rows(), img.cols());
  auto src = img.pixels();
  auto dst = logged.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] < 0.0) throw DomainError("homomorphic filtering needs non-negative pixels");
    dst[i] = std::log1p(src[i]);
  }
  Image out = filter(logged);
  for (double& v : out.pixels()) v = std::max(std::expm1(v), 0.0);
  return out;
}

Image homomorphic_wrap(const FilterSpec& spec, const Image& img) {
  FilterSpec inner = spec;
  inner.homomorphic = false;
  return homomorphic_wrap([&inner](const Image& x) { return apply_filter(inner, x); }, img);
}

Image apply_filter(const FilterSpec& spec, const Image& img) {
  validate(spec);
  if (spec.homomorphic) return homomorphic_wrap(spec, img);
  switch (spec.kind) {
    case FilterKind::posashrink: return posashrink(img, spec.basis);
    case FilterKind::median: return median_filter(img, spec.kernel);
    case FilterKind::lee: return lee_filter(img, spec.kernel, spec.looks);
    case FilterKind::kuan: return kuan_filter(img, spec.kernel, spec.looks);
    case FilterKind::frost: return frost_filter(img, spec.kernel, spec.damping);
    case FilterKind::visu_hard: return wavelet_threshold(img, ThresholdRule::hard, spec.basis);
    case FilterKind::visu_soft: return wavelet_threshold(img, ThresholdRule::soft, spec.basis);
    case FilterKind::visu_semisoft: return wavelet_threshold(img, ThresholdRule::semisoft, spec.basis);
  }
  throw ParameterError("unknown filter kind");
}

}  // namespace posa
