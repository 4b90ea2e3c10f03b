#include "posa/superres.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "posa/errors.hpp"
#include "posa/kernels.hpp"
#include "posa/metrics.hpp"
#include "posa/projection.hpp"

namespace posa {
namespace {

Image doubled(const Image& img) {
  Image out(img.rows(), img.cols());
  kernels::scale(2.0, img.pixels(), out.pixels());
  return out;
}

Subbands assemble(const MatrixSequence& seq) {
  if (!(frob_norm(seq.front()) > 0.0)) {
    throw DomainError("superresolution: leading observation has zero norm");
  }
  MatrixSequence details = span_cascade(seq, LastElement::normalized);
  return {doubled(seq.front()), std::move(details[0]), std::move(details[1]), std::move(details[2])};
}

}  // namespace

AuxiliaryMatrices draw_auxiliary(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw DimensionError("draw_auxiliary: empty size");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  AuxiliaryMatrices aux{Image(rows, cols), Image(rows, cols), Image(rows, cols), seed};
  for (Image* m : {&aux.a1, &aux.a2, &aux.a3}) {
    for (double& v : m->pixels()) v = uniform(rng);
  }
  return aux;
}

Subbands superres_four_bands(const ObservationSet& obs) {
  if (obs.observations.size() != 4) {
    throw ParameterError("superres_four: need exactly 4 observations, got " +
                         std::to_string(obs.observations.size()));
  }
  for (const auto& o : obs.observations) require_same_shape(obs.observations.front(), o, "superres_four");
  return assemble(obs.observations);
}

Subbands superres_one_bands(const Image& obs, const AuxiliaryMatrices& aux) {
  require_same_shape(obs, aux.a1, "superres_one");
  require_same_shape(obs, aux.a2, "superres_one");
  require_same_shape(obs, aux.a3, "superres_one");
  return assemble({obs, aux.a1, aux.a2, aux.a3});
}

Image superres_four(const ObservationSet& obs, const WaveletBasis& basis) {
  return idwt2(superres_four_bands(obs), basis);
}

Image superres_one(const Image& obs, const AuxiliaryMatrices& aux, const WaveletBasis& basis) {
  return idwt2(superres_one_bands(obs, aux), basis);
}

ObservationSet synthesize_observations(const Image& hr, const SpeckleModel& model, double snr_db) {
  if (hr.empty() || hr.rows() % 2 != 0 || hr.cols() % 2 != 0) {
    throw DimensionError("synthesize_observations: HR image needs even, non-zero dimensions");
  }
  const std::size_t rows = hr.rows();
  const std::size_t cols = hr.cols();

  // 2x2 box average anchored at (r, c), periodic at the far edges
  auto blurred = [&](std::size_t r, std::size_t c) {
    const std::size_t r1 = (r + 1) % rows;
    const std::size_t c1 = (c + 1) % cols;
    return 0.25 * (hr(r, c) + hr(r, c1) + hr(r1, c) + hr(r1, c1));
  };

  ObservationSet set;
  set.seed = model.seed;
  if (std::isfinite(snr_db)) set.snr_db = snr_db;
  const std::size_t phases[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (std::uint64_t k = 0; k < 4; ++k) {
    Image o(rows / 2, cols / 2);
    for (std::size_t r = 0; r < o.rows(); ++r) {
      for (std::size_t c = 0; c < o.cols(); ++c) o(r, c) = blurred(2 * r + phases[k][0], 2 * c + phases[k][1]);
    }
    if (std::isfinite(snr_db)) {
      SpeckleModel sub = model;
      sub.seed = derive_seed(model.seed, k);
      o = apply_speckle_snr(o, sub, snr_db);
    }
    set.observations.push_back(std::move(o));
  }
  return set;
}

Reconstruction reconstruct_and_score(const Image& hr, const SpeckleModel& model, double snr_db,
                                     const WaveletBasis& basis) {
  ObservationSet obs = synthesize_observations(hr, model, snr_db);
  Image out = superres_four(obs, basis);
  double peak = 0.0;
  for (double v : hr.pixels()) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) throw DomainError("reconstruct_and_score: reference image is identically zero");
  const auto score = psnr(hr, out, peak);
  return {std::move(out), score, std::move(obs)};
}

}  // namespace posa
