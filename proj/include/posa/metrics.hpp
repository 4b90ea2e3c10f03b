#pragma once

#include <optional>
#include <string>

#include "posa/image.hpp"

namespace posa {

struct NoiseStats {
  double nmv = 0.0;  // mean
  double nv = 0.0;   // population variance
  double nsd = 0.0;  // sqrt(nv)
};

NoiseStats nmv_nv_nsd(const Image& img);

// Mean square difference between the noisy and the despeckled image.
double msd(const Image& noisy, const Image& despeckled);

// Average of mean^2 / variance over non-overlapping tile x tile blocks
// (remainder rows and columns dropped, zero-variance blocks skipped).
// Throws DimensionError if no full tile fits and DomainError if every block is flat.
double enl(const Image& img, std::size_t tile = 25);

// (1 / RC) * sum (I - NMV) / NSD, evaluated term by term. Analytically zero,
// so the result is floating-point residue. Throws DomainError when NSD is 0.
double deflection_ratio(const Image& img);

// Pratt's figure of merit. Throws DomainError when `ideal` is empty; returns
// 0 when `detected` is empty.
double pratt_fom(const EdgeMap& detected, const EdgeMap& ideal, double alpha = 1.0 / 9.0);

// Sobel gradient magnitude with replicated borders; a pixel is an edge when its
// magnitude is positive and at least the nearest-rank 90th percentile.
EdgeMap edge_map(const Image& img);

// 10 log10(peak^2 / MSE). nullopt signals an infinite PSNR (MSE == 0).
std::optional<double> psnr(const Image& reference, const Image& test, double peak);

// 10 log10(sum ref^2 / sum (test - ref)^2); nullopt when test == ref.
std::optional<double> snr_db(const Image& reference, const Image& test);

// One row of a filter comparison table. Metrics that could not be computed
// are absent, with the reason in the matching *_note field.
struct MetricsReport {
  std::optional<double> msd;
  double nmv = 0.0;
  double nsd = 0.0;
  std::optional<double> enl;
  std::optional<double> dr;
  std::optional<double> fom;
  std::optional<double> psnr_db;
  bool psnr_infinite = false;
  std::string enl_note;
  std::string dr_note;

  bool has_psnr() const { return psnr_db.has_value() || psnr_infinite; }
};

struct ReportOptions {
  std::size_t tile = 25;
  const EdgeMap* ideal_edges = nullptr;  // FOM computed only when set
  const Image* reference = nullptr;      // PSNR computed only when set
  double peak = 255.0;
  bool include_msd = true;
};

MetricsReport full_report(const Image& noisy, const Image& despeckled, const ReportOptions& options = {});

}  // namespace posa
