#include "nlmc/simd.hpp"

#include <atomic>
#include <stdexcept>

namespace nlmc::simd {

extern const Ops kScalarOps;
#if defined(NLMC_HAVE_AVX2)
extern const Ops kAvx2Ops;
#endif

namespace {

bool cpu_has_avx2() {
#if defined(NLMC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Ops* detect() {
#if defined(NLMC_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2Ops;
#endif
    return &kScalarOps;
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

bool backend_compiled(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(NLMC_HAVE_AVX2)
            return true;
#else
            return false;
#endif
    }
    return false;
}

bool backend_usable(Backend b) {
    if (b == Backend::scalar) return true;
    return backend_compiled(b) && cpu_has_avx2();
}

const Ops& backend_ops(Backend b) {
    switch (b) {
        case Backend::scalar: return kScalarOps;
        case Backend::avx2:
#if defined(NLMC_HAVE_AVX2)
            return kAvx2Ops;
#else
            break;
#endif
    }
    throw std::runtime_error("simd backend not compiled into this binary");
}

const Ops& ops() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (p == nullptr) {
        p = detect();
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

void force(Backend b) {
    if (!backend_usable(b)) throw std::runtime_error("requested simd backend is not usable on this machine");
    g_active.store(&backend_ops(b), std::memory_order_release);
}

void reset() { g_active.store(detect(), std::memory_order_release); }

std::string_view active_name() { return ops().name; }

}  // namespace nlmc::simd
