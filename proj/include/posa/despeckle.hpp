#pragma once

#include <functional>
#include <optional>
#include <string_view>

#include "posa/image.hpp"
#include "posa/wavelet.hpp"

namespace posa {

enum class FilterKind { posashrink, median, lee, kuan, frost, visu_hard, visu_soft, visu_semisoft };

enum class ThresholdRule { hard, soft, semisoft };

struct FilterSpec {
  FilterKind kind = FilterKind::posashrink;
  int kernel = 3;
  WaveletBasis basis = WaveletBasis::db1();
  double looks = 4.0;
  double damping = 1.0;
  bool homomorphic = false;

  // Defaults used for table-style comparisons: kernel 3, 4 looks, damping 1,
  // db1, homomorphic for the local-statistics filters (lee, kuan, frost).
  static FilterSpec defaults(FilterKind kind);
};

std::string_view filter_name(FilterKind kind);
std::optional<FilterKind> parse_filter(std::string_view name);
bool is_local_filter(FilterKind kind);
bool is_wavelet_filter(FilterKind kind);

// Throws ParameterError for an even or < 3 kernel, looks < 1, damping <= 0,
// or homomorphic on a wavelet filter.
void validate(const FilterSpec& spec);

// Runs the filter described by `spec`, wrapping it homomorphically when asked.
Image apply_filter(const FilterSpec& spec, const Image& img);

// Wavelet-domain span projection despeckler: detail bands are replaced by
// their cascade projections onto the preceding normalized bands, and the
// image is rebuilt from the original approximation band.
Image posashrink(const Image& img, const WaveletBasis& basis = WaveletBasis::db1());

// All local filters use edge-replicated padding.
Image median_filter(const Image& img, int kernel);
Image lee_filter(const Image& img, int kernel, double looks);
Image kuan_filter(const Image& img, int kernel, double looks);
Image frost_filter(const Image& img, int kernel, double damping);

// sigma * sqrt(2 ln M), sigma = median(|HH|) / 0.6745, M = number of detail coefficients.
double universal_threshold(const Subbands& bands);
// Shrinks one coefficient. semisoft is firm shrinkage with T1 = t, T2 = 2t.
double shrink(double w, ThresholdRule rule, double t);

// Universal-threshold shrinkage on all three detail bands; LL is untouched.
Image wavelet_threshold(const Image& img, ThresholdRule rule, const WaveletBasis& basis = WaveletBasis::db1());

// exp(F(ln(img + 1))) - 1, clamped below at 0. Throws DomainError on negative pixels.
Image homomorphic_wrap(const std::function<Image(const Image&)>& filter, const Image& img);
Image homomorphic_wrap(const FilterSpec& spec, const Image& img);

}  // namespace posa
