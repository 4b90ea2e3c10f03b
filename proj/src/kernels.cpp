#include "posa/kernels.hpp"

#include <cassert>

namespace posa::kernels {
namespace {

struct Table {
  Isa isa;
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*sum)(std::span<const double>);
  double (*sum_sq_dev)(std::span<const double>, double);
  void (*axpy)(double, std::span<const double>, std::span<double>);
  void (*scale)(double, std::span<const double>, std::span<double>);
  void (*multiply)(std::span<const double>, std::span<const double>, std::span<double>);
};

Table select() {
#if defined(POSA_HAVE_AVX2_KERNELS)
  if (avx2_available()) {
    return {Isa::avx2, avx2::dot, avx2::sum, avx2::sum_sq_dev, avx2::axpy, avx2::scale, avx2::multiply};
  }
#endif
  return {Isa::scalar, scalar::dot, scalar::sum, scalar::sum_sq_dev, scalar::axpy, scalar::scale, scalar::multiply};
}

const Table& table() {
  static const Table t = select();
  return t;
}

}  // namespace

bool avx2_available() {
#if defined(POSA_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return table().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return table().dot(a, b);
}

double sum(std::span<const double> x) { return table().sum(x); }

double sum_sq_dev(std::span<const double> x, double mean) { return table().sum_sq_dev(x, mean); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  table().axpy(alpha, x, y);
}

void scale(double alpha, std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  table().scale(alpha, x, out);
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  table().multiply(a, b, out);
}

}  // namespace posa::kernels
