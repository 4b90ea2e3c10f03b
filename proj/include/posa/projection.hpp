#pragma once

#include <vector>

#include "posa/image.hpp"

namespace posa {

// Ordered list of equally-sized matrices treated as vectors of the
// trace inner-product space.
using MatrixSequence = std::vector<Image>;

// <a, b> = trace(a b^T) = sum of elementwise products.
double frob_inner(const Image& a, const Image& b);
double frob_norm(const Image& a);
// a / ||a||. Throws DomainError for a zero-norm input.
Image normalize(const Image& a);

// Whether the last element of the cascade is projected as given or after
// normalization. The despeckler projects the raw HH band; the
// superresolution reconstructors normalize every member.
enum class LastElement { raw, normalized };

// Given [M1..Mn], n >= 2, with U_j = M_j / ||M_j||, returns [P2..Pn] where
//   P_k = sum_{j<k} <M_k', U_j> U_j,   M_k' = U_k for k < n,
// and M_n' is M_n or U_n according to `last`. The U_j are used as given,
// without orthogonalizing them against each other. A zero-norm member is
// treated as absent: it contributes no direction and its own P_k is zero.
MatrixSequence span_cascade(const MatrixSequence& seq, LastElement last = LastElement::raw);

}  // namespace posa
