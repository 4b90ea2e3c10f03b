#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "posa/image.hpp"
#include "posa/speckle.hpp"
#include "posa/wavelet.hpp"

namespace posa {

// Low-resolution inputs to the reconstructors: one or four equally-sized images.
struct ObservationSet {
  std::vector<Image> observations;
  std::optional<std::uint64_t> seed;
  std::optional<double> snr_db;
};

// Random companions for the single-observation case; entries in [0, 1].
struct AuxiliaryMatrices {
  Image a1;
  Image a2;
  Image a3;
  std::uint64_t seed = 0;
};

AuxiliaryMatrices draw_auxiliary(std::size_t rows, std::size_t cols, std::uint64_t seed);

// Wavelet-domain assembly behind the reconstructors, before the inverse transform.
Subbands superres_four_bands(const ObservationSet& obs);
Subbands superres_one_bands(const Image& obs, const AuxiliaryMatrices& aux);

// Four-observation reconstruction. LL = 2 * O1 (the one-level DC gain, so the
// output keeps the observations' radiometry); LH, HL, HH are the cascade
// projections of [O1, O2, O3, O4] with every member normalized.
Image superres_four(const ObservationSet& obs, const WaveletBasis& basis = WaveletBasis::db4());

// Single-observation reconstruction: the cascade runs on [O, A1, A2, A3].
Image superres_one(const Image& obs, const AuxiliaryMatrices& aux, const WaveletBasis& basis = WaveletBasis::db4());

// 2x2 box blur of `hr`, decimated at phases (0,0), (0,1), (1,0), (1,1); each
// phase is corrupted by apply_speckle_snr with sub-seed derive_seed(model.seed, k).
// An infinite snr_db skips corruption.
ObservationSet synthesize_observations(const Image& hr, const SpeckleModel& model, double snr_db);

struct Reconstruction {
  Image image;
  std::optional<double> psnr_db;  // nullopt when the reconstruction is exact
  ObservationSet observations;
};

// synthesize_observations -> superres_four -> PSNR against `hr` (peak = max |hr|).
Reconstruction reconstruct_and_score(const Image& hr, const SpeckleModel& model, double snr_db,
                                     const WaveletBasis& basis = WaveletBasis::db4());

}  // namespace posa
