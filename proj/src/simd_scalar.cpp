#include "nlmc/simd.hpp"

#include <cmath>

namespace nlmc::simd {

namespace {

double abs_diff_sum_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

extern const Ops kScalarOps;
const Ops kScalarOps{abs_diff_sum_scalar, dot_scalar, axpy_scalar, "scalar"};

}  // namespace nlmc::simd
