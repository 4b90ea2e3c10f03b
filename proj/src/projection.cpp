#include "posa/projection.hpp"

#include <cmath>
#include <optional>

#include "posa/errors.hpp"
#include "posa/kernels.hpp"

namespace posa {

double frob_inner(const Image& a, const Image& b) {
  require_same_shape(a, b, "frob_inner");
  return kernels::dot(a.pixels(), b.pixels());
}

double frob_norm(const Image& a) { return std::sqrt(kernels::dot(a.pixels(), a.pixels())); }

Image normalize(const Image& a) {
  const double norm = frob_norm(a);
  if (!(norm > 0.0)) throw DomainError("normalize: matrix has zero Frobenius norm");
  Image out(a.rows(), a.cols());
  kernels::scale(1.0 / norm, a.pixels(), out.pixels());
  return out;
}

MatrixSequence span_cascade(const MatrixSequence& seq, LastElement last) {
  if (seq.size() < 2) throw ParameterError("span_cascade: need at least two matrices");
  for (const auto& m : seq) require_same_shape(seq.front(), m, "span_cascade");

  const std::size_t n = seq.size();
  std::vector<std::optional<Image>> unit(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (j + 1 < n || last == LastElement::normalized) {
      if (frob_norm(seq[j]) > 0.0) unit[j] = normalize(seq[j]);
    }
  }

  MatrixSequence out;
  out.reserve(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    Image p(seq[k].rows(), seq[k].cols());
    const bool is_last = k + 1 == n;
    const Image* target = nullptr;
    if (is_last && last == LastElement::raw) {
      target = &seq[k];
    } else if (unit[k]) {
      target = &*unit[k];
    }
    if (target != nullptr) {
      for (std::size_t j = 0; j < k; ++j) {
        if (!unit[j]) continue;
        kernels::axpy(frob_inner(*target, *unit[j]), unit[j]->pixels(), p.pixels());
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace posa
