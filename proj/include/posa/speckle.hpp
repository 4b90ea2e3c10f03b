#pragma once

#include <cstdint>

#include "posa/image.hpp"

namespace posa {

enum class SpeckleKind {
  amplitude_single_look,  // Rayleigh, mean 1, variance (4 - pi) / pi
  intensity_single_look,  // negative exponential, mean 1, variance 1
  multilook,              // gamma(shape L, scale 1/L), mean 1, variance 1/L
};

struct SpeckleModel {
  SpeckleKind kind = SpeckleKind::multilook;
  int looks = 1;
  std::uint64_t seed = 0;

  double theoretical_variance() const;
};

// Independent 64-bit stream seed for sub-stream `stream` of `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// i.i.d. unit-mean speckle field S; deterministic given (rows, cols, model).
Image draw_speckle_field(std::size_t rows, std::size_t cols, const SpeckleModel& model);

// I_s = I * S.
Image apply_speckle(const Image& img, const SpeckleModel& model);

// I + beta * I * (S - 1), with beta > 0 chosen so that
// 10 log10(sum I^2 / sum (beta I (S - 1))^2) equals target_snr_db.
Image apply_speckle_snr(const Image& img, const SpeckleModel& model, double target_snr_db);

}  // namespace posa
