#include "posa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "posa/errors.hpp"
#include "posa/kernels.hpp"

namespace posa {

NoiseStats nmv_nv_nsd(const Image& img) {
  const Moments m = image_stats(img);
  return {m.mean, m.variance, std::sqrt(m.variance)};
}

double msd(const Image& noisy, const Image& despeckled) {
  require_same_shape(noisy, despeckled, "msd");
  if (noisy.empty()) throw DimensionError("msd: empty images");
  auto a = noisy.pixels();
  auto b = despeckled.pixels();
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double enl(const Image& img, std::size_t tile) {
  if (tile == 0) throw ParameterError("enl: tile size must be positive");
  if (img.rows() < tile || img.cols() < tile) {
    throw DimensionError("enl: image " + std::to_string(img.rows()) + "x" + std::to_string(img.cols()) +
                         " is smaller than one " + std::to_string(tile) + "x" + std::to_string(tile) + " tile");
  }
  std::vector<double> block(tile * tile);
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t r0 = 0; r0 + tile <= img.rows(); r0 += tile) {
    for (std::size_t c0 = 0; c0 + tile <= img.cols(); c0 += tile) {
      for (std::size_t r = 0; r < tile; ++r) {
        const auto src = img.row(r0 + r).subspan(c0, tile);
        std::copy(src.begin(), src.end(), block.begin() + static_cast<std::ptrdiff_t>(r * tile));
      }
      const double n = static_cast<double>(block.size());
      const double mean = kernels::sum(block) / n;
      const double var = kernels::sum_sq_dev(block, mean) / n;
      if (var > 0.0) {
        total += mean * mean / var;
        ++used;
      }
    }
  }
  if (used == 0) throw DomainError("enl: every block has zero variance");
  return total / static_cast<double>(used);
}

double deflection_ratio(const Image& img) {
  const NoiseStats s = nmv_nv_nsd(img);
  if (!(s.nsd > 0.0)) throw DomainError("deflection ratio: image has zero standard deviation");
  double acc = 0.0;
  for (double v : img.pixels()) acc += (v - s.nmv) / s.nsd;
  return acc / static_cast<double>(img.size());
}

double pratt_fom(const EdgeMap& detected, const EdgeMap& ideal, double alpha) {
  if (detected.rows() != ideal.rows() || detected.cols() != ideal.cols()) {
    throw DimensionError("pratt_fom: edge maps differ in size");
  }
  std::vector<std::pair<double, double>> ideal_px;
  for (std::size_t r = 0; r < ideal.rows(); ++r) {
    for (std::size_t c = 0; c < ideal.cols(); ++c) {
      if (ideal(r, c)) ideal_px.emplace_back(static_cast<double>(r), static_cast<double>(c));
    }
  }
  if (ideal_px.empty()) throw DomainError("pratt_fom: ideal edge map is empty");

  std::size_t n_detected = 0;
  double acc = 0.0;
  for (std::size_t r = 0; r < detected.rows(); ++r) {
    for (std::size_t c = 0; c < detected.cols(); ++c) {
      if (!detected(r, c)) continue;
      ++n_detected;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [ir, ic] : ideal_px) {
        const double dr = static_cast<double>(r) - ir;
        const double dc = static_cast<double>(c) - ic;
        best = std::min(best, dr * dr + dc * dc);
        if (best == 0.0) break;
      }
      acc += 1.0 / (1.0 + alpha * best);
    }
  }
  if (n_detected == 0) return 0.0;
  return acc / static_cast<double>(std::max(n_detected, ideal_px.size()));
}

EdgeMap edge_map(const Image& img) {
  if (img.empty()) throw DimensionError("edge_map: empty image");
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  auto at = [&](std::ptrdiff_t r, std::ptrdiff_t c) {
    r = std::clamp<std::ptrdiff_t>(r, 0, static_cast<std::ptrdiff_t>(rows) - 1);
    c = std::clamp<std::ptrdiff_t>(c, 0, static_cast<std::ptrdiff_t>(cols) - 1);
    return img(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  };

  Image mag(rows, cols);
  for (std::size_t ur = 0; ur < rows; ++ur) {
    for (std::size_t uc = 0; uc < cols; ++uc) {
      const auto r = static_cast<std::ptrdiff_t>(ur);
      const auto c = static_cast<std::ptrdiff_t>(uc);
      const double gx = (at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1)) -
                        (at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1));
      const double gy = (at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1)) -
                        (at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1));
      mag(ur, uc) = std::hypot(gx, gy);
    }
  }

  std::vector<double> sorted(mag.pixels().begin(), mag.pixels().end());
  const std::size_t rank = static_cast<std::size_t>(0.9 * static_cast<double>(sorted.size() - 1));
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank), sorted.end());
  const double threshold = sorted[rank];

  EdgeMap edges(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double m = mag(r, c);
      if (m > 0.0 && m >= threshold) edges.set(r, c);
    }
  }
  return edges;
}

std::optional<double> psnr(const Image& reference, const Image& test, double peak) {
  if (!(peak > 0.0)) throw ParameterError("psnr: peak must be positive");
  const double mse = msd(reference, test);
  if (mse == 0.0) return std::nullopt;
  return 10.0 * std::log10(peak * peak / mse);
}

std::optional<double> snr_db(const Image& reference, const Image& test) {
  require_same_shape(reference, test, "snr_db");
  double signal = 0.0;
  double noise = 0.0;
  auto a = reference.pixels();
  auto b = test.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) {
    signal += a[i] * a[i];
    noise += (b[i] - a[i]) * (b[i] - a[i]);
  }
  if (noise == 0.0) return std::nullopt;
  return 10.0 * std::log10(signal / noise);
}

MetricsReport full_report(const Image& noisy, const Image& despeckled, const ReportOptions& options) {
  require_same_shape(noisy, despeckled, "full_report");
  MetricsReport report;
  if (options.include_msd) report.msd = msd(noisy, despeckled);
  const NoiseStats s = nmv_nv_nsd(despeckled);
  report.nmv = s.nmv;
  report.nsd = s.nsd;

  try {
    report.enl = enl(despeckled, options.tile);
  } catch (const DimensionError&) {
    report.enl_note = "image_smaller_than_tile";
  } catch (const DomainError&) {
    report.enl_note = "all_blocks_flat";
  }
  try {
    report.dr = deflection_ratio(despeckled);
  } catch (const DomainError&) {
    report.dr_note = "zero_nsd";
  }

  if (options.ideal_edges != nullptr) report.fom = pratt_fom(edge_map(despeckled), *options.ideal_edges);
  if (options.reference != nullptr) {
    report.psnr_db = psnr(*options.reference, despeckled, options.peak);
    report.psnr_infinite = !report.psnr_db.has_value();
  }
  return report;
}

}  // namespace posa
