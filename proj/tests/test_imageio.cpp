#include <doctest.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "posa/errors.hpp"
#include "posa/imageio.hpp"
#include "support.hpp"

using namespace posa;

namespace {

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("reads an 8-bit PGM") {
  testing::TempDir dir("io");
  write_bytes(dir / "a.pgm", std::string("P5\n2 2\n255\n") + std::string("\x00\x40\x80\xff", 4));
  const Raster r = read_raster(dir / "a.pgm");
  CHECK(r.format == RasterFormat::pgm8);
  CHECK(r.image == Image::from_rows({{0, 64}, {128, 255}}));
}

TEST_CASE("reads 16-bit big-endian samples and header comments") {
  testing::TempDir dir("io");
  write_bytes(dir / "b.pgm", std::string("P5\n# comment\n1 1\n65535\n") + std::string("\x01\x00", 2));
  const Raster r = read_raster(dir / "b.pgm");
  CHECK(r.format == RasterFormat::pgm16);
  CHECK(r.maxval == 65535);
  CHECK(r.image(0, 0) == 256.0);
}

TEST_CASE("parse errors") {
  testing::TempDir dir("io");
  write_bytes(dir / "trunc.pgm", std::string("P5\n4 4\n255\n") + "abc");
  CHECK_THROWS_AS(read_image(dir / "trunc.pgm"), ParseError);
  write_bytes(dir / "hdr.pgm", "P5\nx 4\n255\n");
  try {
    read_image(dir / "hdr.pgm");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("byte offset 3") != std::string::npos);
  }
  write_bytes(dir / "p2.pgm", "P2\n1 1\n255\n0\n");
  CHECK_THROWS_AS(read_image(dir / "p2.pgm"), ParseError);
  write_bytes(dir / "junk.bin", "hello");
  CHECK_THROWS_AS(read_image(dir / "junk.bin"), ParseError);
  CHECK_THROWS_AS(read_image(dir / "missing.pgm"), IoError);
  CHECK_THROWS_AS(write_image(Image(2, 2), dir.path() / "no" / "such" / "dir.pgm", RasterFormat::pgm8), IoError);
}

TEST_CASE("write clamps, rounds and is deterministic") {
  testing::TempDir dir("io");
  const Image img = Image::from_rows({{-3.2, 127.5}, {127.4, 300.0}});
  const auto bytes = quantize(img, 255);
  CHECK(bytes == std::vector<unsigned char>{0, 128, 127, 255});
  write_image(img, dir / "x.pgm", RasterFormat::pgm8);
  write_image(img, dir / "y.pgm", RasterFormat::pgm8);
  CHECK(read_text(dir / "x.pgm") == read_text(dir / "y.pgm"));
  CHECK(read_text(dir / "x.pgm").substr(0, 11) == "P5\n2 2\n255\n");
}

TEST_CASE("integer images round-trip through every format") {
  testing::TempDir dir("io");
  for (auto [format, name, maxval] : {std::tuple{RasterFormat::pgm8, "a.pgm", 255},
                                      std::tuple{RasterFormat::pgm16, "b.pgm", 65535},
                                      std::tuple{RasterFormat::png_gray8, "c.png", 255},
                                      std::tuple{RasterFormat::png_gray16, "d.png", 65535}}) {
    Image img = testing::random_image(7, 9, 3, 0, maxval);
    for (double& v : img.pixels()) v = std::round(v);
    write_image(img, dir / name, format);
    const Raster back = read_raster(dir / name);
    CHECK(back.format == format);
    CHECK(back.image == img);
    write_image(back.image, dir / (std::string("again_") + name), format);
    CHECK(read_image(dir / (std::string("again_") + name)) == img);
  }
}

TEST_CASE("edge maps read as non-zero pixels") {
  testing::TempDir dir("io");
  write_image(Image::from_rows({{0, 255}, {0, 1}}), dir / "e.pgm", RasterFormat::pgm8);
  const EdgeMap e = read_edge_map(dir / "e.pgm");
  CHECK(e.count() == 2);
  CHECK(e(0, 1));
  CHECK_FALSE(e(1, 0));
}

TEST_CASE("report csv schema") {
  MetricsReport identity;
  identity.msd = 0.0;
  identity.nmv = 90.089;
  identity.nsd = 43.99612345;
  identity.enl = 11.0934;
  identity.dr = 2.558e-17;
  MetricsReport other;
  other.nmv = 1.0;
  other.nsd = 0.5;
  other.fom = 0.4591;
  const std::string csv = format_report({{"identity", identity}, {"other", other}});
  CHECK(csv ==
        "filter,MSD,NMV,NSD,ENL,DR,FOM\n"
        "identity,0,90.089,43.9961,11.0934,2.558e-17,\n"
        "other,,1,0.5,,,0.4591\n");

  other.psnr_infinite = true;
  identity.psnr_db = 26.4759;
  const std::string with_psnr = format_report({{"a", identity}, {"b", other}});
  CHECK(with_psnr.substr(0, with_psnr.find('\n')) == "filter,MSD,NMV,NSD,ENL,DR,FOM,PSNR");
  CHECK(with_psnr.find(",26.4759\n") != std::string::npos);
  CHECK(with_psnr.find(",inf\n") != std::string::npos);
}

TEST_CASE("report values parse back at six significant digits") {
  testing::TempDir dir("io");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<ReportRow> rows;
  for (int i = 0; i < 10; ++i) {
    MetricsReport m;
    m.msd = std::pow(10.0, u(rng));
    m.nmv = std::pow(10.0, u(rng));
    m.nsd = std::pow(10.0, u(rng));
    m.enl = std::pow(10.0, u(rng));
    m.dr = -std::pow(10.0, 3 * u(rng));
    m.fom = std::abs(u(rng)) / 5.0;
    rows.emplace_back("row" + std::to_string(i), m);
  }
  write_report(rows, dir / "r.csv");
  std::stringstream text(read_text(dir / "r.csv"));
  std::string line;
  std::getline(text, line);
  CHECK(line == "filter,MSD,NMV,NSD,ENL,DR,FOM");
  for (const auto& [label, m] : rows) {
    REQUIRE(std::getline(text, line));
    const auto f = split(line);
    REQUIRE(f.size() == 7);
    CHECK(f[0] == label);
    const double want[] = {*m.msd, m.nmv, m.nsd, *m.enl, *m.dr, *m.fom};
    for (int k = 0; k < 6; ++k) {
      double got = 0.0;
      std::from_chars(f[k + 1].data(), f[k + 1].data() + f[k + 1].size(), got);
      CHECK(std::abs(got - want[k]) <= 5e-6 * std::abs(want[k]));
    }
  }
  CHECK(read_text(dir / "r.csv").find('\r') == std::string::npos);
}
