#pragma once

// Data-parallel inner loops shared by the transforms, the projection cascade,
// the speckle model and the metrics. Each kernel has a portable scalar
// reference in kernels::scalar and, on x86-64 builds, an AVX2/FMA variant in
// kernels::avx2. The unqualified entry points dispatch once per process to
// the best variant the running CPU supports.
//
// Reductions (dot, sum, sum_sq_dev) and axpy may differ from the scalar
// reference by rounding only; scale and multiply are bit-exact across
// variants.

#include <span>
#include <string_view>

namespace posa::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
std::string_view isa_name(Isa isa);
// True when the AVX2 variant is compiled in and the CPU reports avx2+fma.
bool avx2_available();

double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double mean);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// out = alpha * x; out may alias x
void scale(double alpha, std::span<const double> x, std::span<double> out);
// out = a * b elementwise; out may alias either input
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double mean);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<const double> x, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
}  // namespace scalar

#if defined(POSA_HAVE_AVX2_KERNELS)
// Only call these when avx2_available() is true.
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> x);
double sum_sq_dev(std::span<const double> x, double mean);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<const double> x, std::span<double> out);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace posa::kernels
