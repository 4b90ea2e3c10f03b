#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>

#include "posa/despeckle.hpp"
#include "posa/errors.hpp"
#include "posa/imageio.hpp"
#include "posa/metrics.hpp"
#include "posa/speckle.hpp"
#include "posa/superres.hpp"

namespace posa::cli {
namespace {

// Raised for flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RasterFormat output_format(const std::string& path, int maxval) {
  const bool wide = maxval > 255;
  if (std::filesystem::path(path).extension() == ".png") {
    return wide ? RasterFormat::png_gray16 : RasterFormat::png_gray8;
  }
  return wide ? RasterFormat::pgm16 : RasterFormat::pgm8;
}

WaveletBasis basis_or_throw(const std::string& name) {
  auto basis = WaveletBasis::parse(name);
  if (!basis) throw UsageError("--wavelet must be db1 or db4, got '" + name + "'");
  return *basis;
}

struct SpeckleArgs {
  std::string in, out, model = "multilook";
  int looks = 1;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;
};

int cmd_speckle(const SpeckleArgs& a, std::ostream& out) {
  SpeckleModel model;
  if (a.model == "amplitude") {
    model.kind = SpeckleKind::amplitude_single_look;
  } else if (a.model == "intensity") {
    model.kind = SpeckleKind::intensity_single_look;
  } else if (a.model == "multilook") {
    model.kind = SpeckleKind::multilook;
  } else {
    throw UsageError("--model must be amplitude, intensity or multilook, got '" + a.model + "'");
  }
  if (a.looks < 1) throw UsageError("--looks must be >= 1, got " + std::to_string(a.looks));
  if (a.snr_db && !std::isfinite(*a.snr_db)) throw UsageError("--snr-db must be finite");
  model.looks = a.looks;
  model.seed = a.seed;

  const Raster in = read_raster(a.in);
  Image noisy = a.snr_db ? apply_speckle_snr(in.image, model, *a.snr_db) : apply_speckle(in.image, model);
  write_image(noisy, a.out, output_format(a.out, in.maxval));
  if (a.snr_db) {
    const auto measured = snr_db(in.image, noisy);
    out << "measured SNR: " << std::fixed << std::setprecision(4) << measured.value_or(INFINITY) << " dB\n";
  }
  return kOk;
}

struct DespeckleArgs {
  std::string in, out, filter;
  std::optional<int> kernel;
  std::optional<std::string> wavelet;
  std::optional<double> looks;
  std::optional<double> damping;
  bool homomorphic = false;
};

FilterSpec despeckle_spec(const DespeckleArgs& a) {
  const auto kind = parse_filter(a.filter);
  if (!kind) throw UsageError("unknown --filter '" + a.filter + "'");
  FilterSpec spec;
  spec.kind = *kind;
  const std::string name(filter_name(*kind));
  if (is_wavelet_filter(*kind)) {
    if (a.kernel) throw UsageError("--kernel does not apply to wavelet filter " + name);
    if (a.homomorphic) throw UsageError("--homomorphic does not apply to wavelet filter " + name);
    if (a.wavelet) spec.basis = basis_or_throw(*a.wavelet);
  } else {
    if (a.wavelet) throw UsageError("--wavelet does not apply to local filter " + name);
    if (a.kernel) spec.kernel = *a.kernel;
    if (spec.kernel < 3 || spec.kernel % 2 == 0) {
      throw UsageError("--kernel must be an odd integer >= 3, got " + std::to_string(spec.kernel));
    }
    spec.homomorphic = a.homomorphic;
  }
  if (a.looks) {
    if (*kind != FilterKind::lee && *kind != FilterKind::kuan) throw UsageError("--looks only applies to lee and kuan");
    if (!(*a.looks >= 1.0)) throw UsageError("--looks must be >= 1");
    spec.looks = *a.looks;
  }
  if (a.damping) {
    if (*kind != FilterKind::frost) throw UsageError("--damping only applies to frost");
    if (!(*a.damping > 0.0)) throw UsageError("--damping must be > 0");
    spec.damping = *a.damping;
  }
  return spec;
}

int cmd_despeckle(const DespeckleArgs& a, std::ostream& out) {
  const FilterSpec spec = despeckle_spec(a);
  const Raster in = read_raster(a.in);
  const auto start = std::chrono::steady_clock::now();
  const Image filtered = apply_filter(spec, in.image);
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  write_image(filtered, a.out, output_format(a.out, in.maxval));
  out << filter_name(spec.kind) << ": " << std::fixed << std::setprecision(3) << elapsed.count() << " ms\n";
  return kOk;
}

struct SuperresArgs {
  std::string out;
  std::vector<std::string> obs;
  std::string wavelet = "db4";
  std::uint64_t seed = 0;
};

int cmd_superres(const SuperresArgs& a, std::ostream& out) {
  if (a.obs.size() != 1 && a.obs.size() != 4) {
    throw UsageError("--obs takes 1 observation (auxiliary-matrix mode) or 4 observations, got " +
                     std::to_string(a.obs.size()));
  }
  const WaveletBasis basis = basis_or_throw(a.wavelet);
  std::vector<Raster> rasters;
  for (const auto& path : a.obs) rasters.push_back(read_raster(path));

  Image hr;
  if (rasters.size() == 1) {
    const Image& o = rasters.front().image;
    hr = superres_one(o, draw_auxiliary(o.rows(), o.cols(), a.seed), basis);
  } else {
    ObservationSet set;
    for (auto& r : rasters) set.observations.push_back(std::move(r.image));
    hr = superres_four(set, basis);
  }
  write_image(hr, a.out, output_format(a.out, rasters.front().maxval));
  out << "reconstructed " << hr.rows() << "x" << hr.cols() << " image\n";
  return kOk;
}

struct MetricsArgs {
  std::string noisy, despeckled, out;
  std::optional<std::string> reference, ideal_edges;
  std::size_t tile = 25;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  if (a.tile == 0) throw UsageError("--tile must be positive");
  const Image noisy = read_image(a.noisy);
  const Image despeckled = read_image(a.despeckled);
  std::optional<Raster> reference;
  std::optional<EdgeMap> ideal;
  if (a.reference) reference = read_raster(*a.reference);
  if (a.ideal_edges) {
    ideal = read_edge_map(*a.ideal_edges);
  } else if (reference) {
    ideal = edge_map(reference->image);
  }

  ReportOptions options;
  options.tile = a.tile;
  options.ideal_edges = ideal ? &*ideal : nullptr;
  if (reference) {
    options.reference = &reference->image;
    options.peak = reference->maxval;
  }
  const MetricsReport report = full_report(noisy, despeckled, options);
  write_report({{std::filesystem::path(a.despeckled).stem().string(), report}}, a.out);
  out << "wrote " << a.out << "\n";
  return kOk;
}

struct BenchmarkArgs {
  std::string in, out;
  std::optional<std::string> reference;
  std::uint64_t seed = 0;
};

constexpr FilterKind kBenchmarkOrder[] = {
    FilterKind::posashrink, FilterKind::median,    FilterKind::lee,      FilterKind::kuan,
    FilterKind::frost,      FilterKind::visu_hard, FilterKind::visu_soft, FilterKind::visu_semisoft,
};

int cmd_benchmark(const BenchmarkArgs& a, std::ostream& out) {
  const Raster noisy = read_raster(a.in);
  if (noisy.image.rows() % 2 != 0 || noisy.image.cols() % 2 != 0) {
    throw DimensionError("benchmark: input dimensions must be even for the wavelet filters");
  }
  std::optional<Raster> reference;
  if (a.reference) {
    reference = read_raster(*a.reference);
    require_same_shape(noisy.image, reference->image, "benchmark");
  }
  const EdgeMap ideal = edge_map(reference ? reference->image : noisy.image);

  ReportOptions options;
  options.ideal_edges = &ideal;
  if (reference) {
    options.reference = &reference->image;
    options.peak = reference->maxval;
  }

  std::vector<std::future<Image>> jobs;
  for (FilterKind kind : kBenchmarkOrder) {
    jobs.push_back(std::async(std::launch::async,
                              [kind, &noisy] { return apply_filter(FilterSpec::defaults(kind), noisy.image); }));
  }

  std::vector<ReportRow> rows;
  ReportOptions original = options;
  original.include_msd = false;
  rows.emplace_back("original", full_report(noisy.image, noisy.image, original));
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Image filtered = jobs[i].get();
    rows.emplace_back(std::string(filter_name(kBenchmarkOrder[i])), full_report(noisy.image, filtered, options));
  }
  write_report(rows, a.out);
  out << "benchmarked " << rows.size() - 1 << " filters (seed " << a.seed << ") -> " << a.out << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SAR despeckling and wavelet-domain superresolution toolkit", "posa"};
  app.require_subcommand(1);

  SpeckleArgs sp;
  auto* speckle = app.add_subcommand("speckle", "Apply synthetic multiplicative speckle");
  speckle->add_option("--in", sp.in, "Input image")->required();
  speckle->add_option("--out", sp.out, "Output image")->required();
  speckle->add_option("--model", sp.model, "amplitude | intensity | multilook");
  speckle->add_option("--looks", sp.looks, "Number of looks (multilook)");
  speckle->add_option("--snr-db", sp.snr_db, "Rescale the additive speckle term to this SNR");
  speckle->add_option("--seed", sp.seed, "RNG seed");

  DespeckleArgs dp;
  auto* despeckle = app.add_subcommand("despeckle", "Run one despeckling filter");
  despeckle->add_option("--in", dp.in, "Input image")->required();
  despeckle->add_option("--out", dp.out, "Output image")->required();
  despeckle->add_option("--filter", dp.filter,
                        "posa | median | lee | kuan | frost | visu_hard | visu_soft | visu_semisoft")
      ->required();
  despeckle->add_option("--kernel", dp.kernel, "Local window size (3, 5, 7, ...)");
  despeckle->add_option("--wavelet", dp.wavelet, "db1 | db4");
  despeckle->add_option("--looks", dp.looks, "Noise prior for lee/kuan");
  despeckle->add_option("--damping", dp.damping, "Frost damping factor");
  despeckle->add_flag("--homomorphic", dp.homomorphic, "Filter in the log domain");

  SuperresArgs sr;
  auto* superres = app.add_subcommand("superres", "Reconstruct a double-resolution image");
  superres->add_option("--out", sr.out, "Output image")->required();
  superres->add_option("--obs", sr.obs, "1 or 4 observation images")->required();
  superres->add_option("--wavelet", sr.wavelet, "db1 | db4");
  superres->add_option("--seed", sr.seed, "Seed for the auxiliary matrices (single observation)");

  MetricsArgs mt;
  auto* metrics = app.add_subcommand("metrics", "Evaluate one despeckled image");
  metrics->add_option("--noisy", mt.noisy, "Noisy input")->required();
  metrics->add_option("--despeckled", mt.despeckled, "Filtered image")->required();
  metrics->add_option("--reference", mt.reference, "Clean reference (enables PSNR, FOM)");
  metrics->add_option("--ideal-edges", mt.ideal_edges, "Ideal edge map image (non-zero = edge)");
  metrics->add_option("--out", mt.out, "CSV report")->required();
  metrics->add_option("--tile", mt.tile, "ENL tile size");

  BenchmarkArgs bm;
  auto* benchmark = app.add_subcommand("benchmark", "Compare every filter on one image");
  benchmark->add_option("--in", bm.in, "Noisy input")->required();
  benchmark->add_option("--reference", bm.reference, "Clean reference");
  benchmark->add_option("--out", bm.out, "CSV table")->required();
  benchmark->add_option("--seed", bm.seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (speckle->parsed()) return cmd_speckle(sp, out);
    if (despeckle->parsed()) return cmd_despeckle(dp, out);
    if (superres->parsed()) return cmd_superres(sr, out);
    if (metrics->parsed()) return cmd_metrics(mt, out);
    if (benchmark->parsed()) return cmd_benchmark(bm, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}

}  // namespace posa::cli
