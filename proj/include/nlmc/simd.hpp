#pragma once

#include <cstddef>
#include <string_view>

namespace nlmc::simd {

// The arithmetic primitives behind the library's inner loops: total
// variation sweeps in the coefficient search, law-flow matrix products and
// expectation dot products. Scalar reference implementations always exist;
// wider variants are selected at runtime from CPU features and must agree
// with the scalar reference (tests/unit/test_simd.cpp). axpy is element-wise
// and therefore bit-identical across variants; the reductions may differ by
// a few ulp because lane accumulation reorders the sum.
struct Ops {
    // sum_i |a[i] - b[i]|
    double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    const char* name;
};

enum class Backend { scalar, avx2 };

bool backend_compiled(Backend b);
bool backend_usable(Backend b);         // compiled and supported by this CPU
const Ops& backend_ops(Backend b);      // throws if not compiled

// Active table. Resolved once from CPU features on first use; force()
// overrides it (CLI --simd flag, equivalence tests).
const Ops& ops();
void force(Backend b);                  // throws if not usable
void reset();                           // back to auto detection
std::string_view active_name();

}  // namespace nlmc::simd
