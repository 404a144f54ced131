#include "nlifo/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

namespace nlifo::kernels {

namespace scalar {

void fringe_row(double* out, const double* alpha, const double* amp, const double* slope,
                const double* phase0, double opd, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = alpha[i] + amp[i] * std::cos(slope[i] * opd + phase0[i]);
}

double max_value(const double* x, std::size_t n) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i) m = std::max(m, x[i]);
    return m;
}

void scale(double* x, std::size_t n, double factor) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= factor;
}

void divide(double* x, std::size_t n, double divisor) {
    for (std::size_t i = 0; i < n; ++i) x[i] /= divisor;
}

void minmax_update(double* mn, double* mx, const double* row, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        mn[i] = std::min(mn[i], row[i]);
        mx[i] = std::max(mx[i], row[i]);
    }
}

}  // namespace scalar

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    const bool avx2 = (ebx & (1u << 5)) != 0;
    __cpuid(1, eax, ebx, ecx, edx);
    const bool fma = (ecx & (1u << 12)) != 0;
    const bool osxsave = (ecx & (1u << 27)) != 0;
    if (!(avx2 && fma && osxsave)) return false;
    // OS must preserve ymm state.
    unsigned lo = 0, hi = 0;
    __asm__ volatile("xgetbv" : "=a"(lo), "=d"(hi) : "c"(0));
    return (lo & 0x6) == 0x6;
#else
    return false;
#endif
}

namespace {

Backend resolve_default() {
    if (const char* env = std::getenv("NLIFO_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_supported())
                throw std::runtime_error("NLIFO_SIMD=avx2 requested but CPU lacks AVX2");
            return Backend::avx2;
        }
        // anything else (incl. "auto") falls through to detection
    }
    return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{resolve_default()};
    return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_supported())
        throw std::runtime_error("AVX2 backend not supported on this CPU");
    backend_slot().store(b, std::memory_order_relaxed);
}

std::string backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

void fringe_row(double* out, const double* alpha, const double* amp, const double* slope,
                const double* phase0, double opd, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2)
        return avx2::fringe_row(out, alpha, amp, slope, phase0, opd, n);
#endif
    scalar::fringe_row(out, alpha, amp, slope, phase0, opd, n);
}

double max_value(const double* x, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::max_value(x, n);
#endif
    return scalar::max_value(x, n);
}

void scale(double* x, std::size_t n, double factor) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::scale(x, n, factor);
#endif
    scalar::scale(x, n, factor);
}

void divide(double* x, std::size_t n, double divisor) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::divide(x, n, divisor);
#endif
    scalar::divide(x, n, divisor);
}

void minmax_update(double* mn, double* mx, const double* row, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_backend() == Backend::avx2) return avx2::minmax_update(mn, mx, row, n);
#endif
    scalar::minmax_update(mn, mx, row, n);
}

}  // namespace nlifo::kernels
