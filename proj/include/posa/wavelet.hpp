#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "posa/image.hpp"

namespace posa {

enum class WaveletName { db1, db4 };

// Orthonormal two-channel filter bank. The highpass filter follows the
// quadrature-mirror rule g[n] = (-1)^n h[L-1-n].
class WaveletBasis {
 public:
  static WaveletBasis db1();
  static WaveletBasis db4();
  static WaveletBasis from_name(WaveletName name);
  // "db1"/"haar" or "db4"; nullopt for anything else.
  static std::optional<WaveletBasis> parse(std::string_view name);

  WaveletName name() const { return name_; }
  std::string_view label() const;
  const std::vector<double>& lowpass() const { return lowpass_; }
  const std::vector<double>& highpass() const { return highpass_; }
  std::size_t length() const { return lowpass_.size(); }

 private:
  WaveletBasis(WaveletName name, std::vector<double> lowpass);

  WaveletName name_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

// One-level separable 2D DWT with periodic extension.
//   LL: lowpass along rows and columns
//   LH: lowpass along rows, highpass along columns (horizontal detail)
//   HL: highpass along rows, lowpass along columns (vertical detail)
//   HH: highpass both ways
// Requires even R, C with R, C >= filter length.
Subbands dwt2(const Image& img, const WaveletBasis& basis);

// Exact inverse of dwt2.
Image idwt2(const Subbands& bands, const WaveletBasis& basis);

}  // namespace posa
