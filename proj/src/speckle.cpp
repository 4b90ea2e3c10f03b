#include "posa/speckle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "posa/errors.hpp"
#include "posa/kernels.hpp"

namespace posa {

double SpeckleModel::theoretical_variance() const {
  switch (kind) {
    case SpeckleKind::amplitude_single_look:
      return (4.0 - std::numbers::pi) / std::numbers::pi;
    case SpeckleKind::intensity_single_look:
      return 1.0;
    case SpeckleKind::multilook:
      break;
  }
  return 1.0 / looks;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over seed + golden-ratio increments
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Image draw_speckle_field(std::size_t rows, std::size_t cols, const SpeckleModel& model) {
  if (model.looks < 1) {
    throw ParameterError("speckle: looks must be >= 1, got " + std::to_string(model.looks));
  }
  if (rows == 0 || cols == 0) throw DimensionError("speckle: empty field requested");

  Image field(rows, cols);
  std::mt19937_64 rng(model.seed);
  auto px = field.pixels();
  switch (model.kind) {
    case SpeckleKind::amplitude_single_look: {
      // inverse CDF with sigma = sqrt(2/pi) so the mean is 1
      const double sigma = std::sqrt(2.0 / std::numbers::pi);
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      for (double& v : px) v = sigma * std::sqrt(-2.0 * std::log1p(-uniform(rng)));
      break;
    }
    case SpeckleKind::intensity_single_look: {
      std::exponential_distribution<double> expo(1.0);
      for (double& v : px) v = expo(rng);
      break;
    }
    case SpeckleKind::multilook: {
      std::gamma_distribution<double> gamma(static_cast<double>(model.looks), 1.0 / model.looks);
      for (double& v : px) v = gamma(rng);
      break;
    }
  }
  return field;
}

Image apply_speckle(const Image& img, const SpeckleModel& model) {
  const Image field = draw_speckle_field(img.rows(), img.cols(), model);
  Image out(img.rows(), img.cols());
  kernels::multiply(img.pixels(), field.pixels(), out.pixels());
  return out;
}

Image apply_speckle_snr(const Image& img, const SpeckleModel& model, double target_snr_db) {
  if (!std::isfinite(target_snr_db)) throw ParameterError("speckle: target SNR must be finite");
  Image noise = draw_speckle_field(img.rows(), img.cols(), model);
  for (double& v : noise.pixels()) v -= 1.0;
  kernels::multiply(img.pixels(), noise.pixels(), noise.pixels());

  const double signal_energy = kernels::dot(img.pixels(), img.pixels());
  const double noise_energy = kernels::dot(noise.pixels(), noise.pixels());
  if (!(noise_energy > 0.0) || !(signal_energy > 0.0)) {
    throw DomainError("speckle: additive speckle term is identically zero; SNR cannot be set");
  }
  const double beta = std::sqrt(signal_energy / (noise_energy * std::pow(10.0, target_snr_db / 10.0)));

  Image out = img;
  kernels::axpy(beta, noise.pixels(), out.pixels());
  return out;
}

}  // namespace posa
