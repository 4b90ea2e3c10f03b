#include <doctest.h>

#include <algorithm>

#include "posa/errors.hpp"
#include "posa/image.hpp"
#include "support.hpp"

using namespace posa;

TEST_CASE("image_stats on hand-computed inputs") {
  const Moments c = image_stats(Image(3, 4, 7.0));
  CHECK(c.mean == 7.0);
  CHECK(c.variance == 0.0);

  const Moments m = image_stats(Image::from_rows({{1, 2}, {3, 4}}));
  CHECK(m.mean == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(m.variance == doctest::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("image_stats matches a two-pass loop") {
  const Image img = testing::random_image(32, 32, 42);
  double s = 0.0;
  for (std::size_t r = 0; r < 32; ++r)
    for (std::size_t c = 0; c < 32; ++c) s += img(r, c);
  const double mean = s / 1024.0;
  double ss = 0.0;
  for (std::size_t r = 0; r < 32; ++r)
    for (std::size_t c = 0; c < 32; ++c) ss += (img(r, c) - mean) * (img(r, c) - mean);
  const double var = ss / 1024.0;

  const Moments m = image_stats(img);
  CHECK(std::abs(m.mean - mean) <= 1e-12 * std::abs(mean));
  CHECK(std::abs(m.variance - var) <= 1e-12 * var);
}

TEST_CASE("image_stats is permutation invariant and variance is non-negative") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Image img = testing::random_image(9, 13, seed, -50.0, 50.0);
    const Moments before = image_stats(img);
    std::vector<double> px(img.pixels().begin(), img.pixels().end());
    std::shuffle(px.begin(), px.end(), std::mt19937_64(seed + 1000));
    const Moments after = image_stats(Image(9, 13, px));
    CHECK(after.mean == doctest::Approx(before.mean).epsilon(1e-12));
    CHECK(after.variance == doctest::Approx(before.variance).epsilon(1e-12));
    CHECK(before.variance > 0.0);
  }
}

TEST_CASE("image construction errors") {
  CHECK_THROWS_AS(Image(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
  CHECK_THROWS_AS(image_stats(Image()), DimensionError);
  CHECK_THROWS_AS(require_same_shape(Image(2, 3), Image(3, 2), "t"), DimensionError);
}

TEST_CASE("transpose and finiteness") {
  const Image a = Image::from_rows({{1, 2, 3}, {4, 5, 6}});
  const Image t = a.transposed();
  CHECK(t.rows() == 3);
  CHECK(t(2, 1) == 6.0);
  CHECK(t.transposed() == a);
  CHECK(a.all_finite());
  Image b = a;
  b(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(b.all_finite());
}
