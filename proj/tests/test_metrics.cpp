#include <doctest.h>

#include <cmath>

#include "posa/errors.hpp"
#include "posa/metrics.hpp"
#include "posa/speckle.hpp"
#include "support.hpp"

using namespace posa;

namespace {

EdgeMap column_line(std::size_t n, std::size_t col) {
  EdgeMap m(n, n);
  for (std::size_t r = 0; r < n; ++r) m.set(r, col);
  return m;
}

}  // namespace

TEST_CASE("nmv, nv and nsd") {
  const NoiseStats c = nmv_nv_nsd(Image(4, 4, 5.0));
  CHECK(c.nmv == 5.0);
  CHECK(c.nv == 0.0);
  CHECK(c.nsd == 0.0);
  const NoiseStats h = nmv_nv_nsd(Image::from_rows({{0, 2}, {0, 2}}));
  CHECK(h.nmv == 1.0);
  CHECK(h.nv == 1.0);
  CHECK(h.nsd == 1.0);
  const Image img = testing::random_image(20, 30, 3);
  const Moments m = image_stats(img);
  CHECK(std::abs(nmv_nv_nsd(img).nmv - m.mean) <= 1e-12 * m.mean);
  CHECK(std::abs(nmv_nv_nsd(img).nv - m.variance) <= 1e-12 * m.variance);
}

TEST_CASE("msd") {
  const Image a = testing::random_image(10, 12, 1);
  CHECK(msd(a, a) == 0.0);
  Image b = a;
  for (double& v : b.pixels()) v += 3.0;
  CHECK(msd(a, b) == doctest::Approx(9.0).epsilon(1e-12));
  const Image c = testing::random_image(10, 12, 2);
  double s = 0.0;
  for (std::size_t r = 0; r < 10; ++r)
    for (std::size_t k = 0; k < 12; ++k) s += (a(r, k) - c(r, k)) * (a(r, k) - c(r, k));
  CHECK(std::abs(msd(a, c) - s / 120.0) <= 1e-12 * s / 120.0);
  CHECK_THROWS_AS(msd(a, Image(12, 10)), DimensionError);
}

TEST_CASE("tiled enl") {
  CHECK_THROWS_AS(enl(Image(60, 60, 3.0)), DomainError);
  CHECK_THROWS_AS(enl(Image(24, 60, 3.0)), DimensionError);

  // 50x50 holds exactly four blocks; expected value from an explicit per-block loop
  Image img(50, 50);
  const double target[2][2] = {{1.0, 4.0}, {9.0, 16.0}};
  for (std::size_t br = 0; br < 2; ++br) {
    for (std::size_t bc = 0; bc < 2; ++bc) {
      for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 25; ++c) img(br * 25 + r, bc * 25 + c) = ((r + c) % 2 ? 10.0 : 20.0) * target[br][bc];
    }
  }
  double expect = 0.0;
  for (std::size_t br = 0; br < 2; ++br) {
    for (std::size_t bc = 0; bc < 2; ++bc) {
      double s = 0.0, ss = 0.0;
      for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 25; ++c) s += img(br * 25 + r, bc * 25 + c);
      const double mean = s / 625.0;
      for (std::size_t r = 0; r < 25; ++r)
        for (std::size_t c = 0; c < 25; ++c) ss += std::pow(img(br * 25 + r, bc * 25 + c) - mean, 2);
      expect += mean * mean / (ss / 625.0);
    }
  }
  CHECK(enl(img) == doctest::Approx(expect / 4.0).epsilon(1e-12));

  // remainder rows/cols are ignored: appending garbage beyond 50 changes nothing
  Image wider(52, 53, 1e6);
  for (std::size_t r = 0; r < 50; ++r)
    for (std::size_t c = 0; c < 50; ++c) wider(r, c) = img(r, c);
  CHECK(enl(wider) == enl(img));
}

TEST_CASE("enl tracks the number of looks") {
  for (int looks : {1, 4, 16}) {
    const Image noisy = apply_speckle(Image(500, 500, 100.0), {SpeckleKind::multilook, looks, 600u + looks});
    CHECK(std::abs(enl(noisy) - looks) / looks < 0.15);
  }
}

TEST_CASE("deflection ratio") {
  const Image img = testing::random_image(64, 64, 12);
  CHECK(std::abs(deflection_ratio(img)) < 1e-9);
  CHECK(std::abs(deflection_ratio(Image::from_rows({{0, 2}, {0, 2}}))) < 1e-15);
  CHECK_THROWS_AS(deflection_ratio(Image(3, 3, 1.0)), DomainError);
  Image shifted = img;
  for (double& v : shifted.pixels()) v += 1000.0;
  CHECK(std::abs(deflection_ratio(shifted) - deflection_ratio(img)) < 1e-12);
}

TEST_CASE("pratt figure of merit") {
  const EdgeMap ideal = column_line(32, 10);
  CHECK(pratt_fom(ideal, ideal) == 1.0);
  CHECK(std::abs(pratt_fom(column_line(32, 11), ideal) - 0.9) < 1e-12);
  CHECK(pratt_fom(EdgeMap(32, 32), ideal) == 0.0);
  CHECK_THROWS_AS(pratt_fom(ideal, EdgeMap(32, 32)), DomainError);
  CHECK_THROWS_AS(pratt_fom(EdgeMap(8, 8), ideal), DimensionError);

  // ideal plus as many far-away spurious pixels
  EdgeMap noisy(64, 64);
  EdgeMap line(64, 64);
  for (std::size_t r = 0; r < 32; ++r) {
    line.set(r, 0);
    noisy.set(r, 0);
    noisy.set(r, 63);  // d = 63
  }
  const double far = 1.0 / (1.0 + 63.0 * 63.0 / 9.0);
  CHECK(pratt_fom(noisy, line) == doctest::Approx((32.0 + 32.0 * far) / 64.0).epsilon(1e-12));
  CHECK(std::abs(pratt_fom(noisy, line) - 0.5) < 0.01);

  // range property over random maps
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    EdgeMap a(16, 16), b(16, 16);
    for (std::size_t r = 0; r < 16; ++r)
      for (std::size_t c = 0; c < 16; ++c) {
        a.set(r, c, rng() % 5 == 0);
        b.set(r, c, rng() % 7 == 0);
      }
    b.set(0, 0);
    const double f = pratt_fom(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("edge map") {
  CHECK(edge_map(Image(20, 20, 4.0)).count() == 0);

  Image step(32, 32);
  for (std::size_t r = 0; r < 32; ++r)
    for (std::size_t c = 16; c < 32; ++c) step(r, c) = 100.0;
  const EdgeMap e = edge_map(step);
  CHECK(e.count() > 0);
  for (std::size_t r = 0; r < 32; ++r) {
    for (std::size_t c = 0; c < 32; ++c) {
      if (e(r, c)) CHECK((c == 15 || c == 16));
    }
    CHECK(e(r, 15));
    CHECK(e(r, 16));
  }
  const Image img = testing::random_image(40, 40, 8);
  CHECK(edge_map(img) == edge_map(img));
  const std::size_t n = edge_map(img).count();
  CHECK(n >= 100);
  CHECK(n <= 200);
}

TEST_CASE("psnr") {
  const Image ref = testing::random_image(16, 16, 2);
  Image off = ref;
  for (double& v : off.pixels()) v += 25.5;
  CHECK(*psnr(ref, off, 255.0) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_FALSE(psnr(ref, ref, 255.0).has_value());
  const Image other = testing::random_image(16, 16, 3);
  double s = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) s += std::pow(ref.pixels()[i] - other.pixels()[i], 2);
  CHECK(std::abs(*psnr(ref, other, 255.0) - 10.0 * std::log10(255.0 * 255.0 / (s / 256.0))) < 1e-9);

  double previous = INFINITY;
  for (double amp : {1.0, 5.0, 25.0}) {
    Image noisy = ref;
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, amp);
    for (double& v : noisy.pixels()) v += g(rng);
    const double p = *psnr(ref, noisy, 255.0);
    CHECK(p < previous);
    previous = p;
  }
  CHECK_THROWS_AS(psnr(ref, ref, 0.0), ParameterError);
}

TEST_CASE("full report") {
  const Image img = apply_speckle(Image(50, 50, 80.0), {SpeckleKind::multilook, 4, 1});
  const EdgeMap edges = edge_map(img);
  ReportOptions opt;
  opt.ideal_edges = &edges;
  const MetricsReport r = full_report(img, img, opt);
  CHECK(*r.msd == 0.0);
  CHECK(r.nmv == nmv_nv_nsd(img).nmv);
  CHECK(r.nsd == nmv_nv_nsd(img).nsd);
  CHECK(*r.enl == enl(img));
  CHECK(*r.dr == deflection_ratio(img));
  CHECK(std::abs(*r.dr) < 1e-9);
  CHECK(*r.fom == 1.0);
  CHECK_FALSE(r.has_psnr());

  const MetricsReport flat = full_report(Image(20, 20, 3.0), Image(20, 20, 3.0));
  CHECK_FALSE(flat.enl.has_value());
  CHECK(flat.enl_note == "image_smaller_than_tile");
  CHECK_FALSE(flat.dr.has_value());
  CHECK(flat.dr_note == "zero_nsd");
  CHECK_FALSE(flat.fom.has_value());

  opt.reference = &img;
  const MetricsReport with_ref = full_report(img, img, opt);
  CHECK(with_ref.psnr_infinite);
}
