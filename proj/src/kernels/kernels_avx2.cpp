// AVX2 + FMA variants of the batch kernels. This translation unit is the only
// one compiled with -mavx2; nothing here runs unless the dispatcher detected
// AVX2 support at runtime.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "nlifo/kernels.hpp"

namespace nlifo::kernels::avx2 {

namespace {

// Argument reduction constants (33-bit split of pi/2, fdlibm style). For
// |x| < 1e6 the quotient fits in 20 bits, so fn * kPio2Hi is exact and the
// two-stage reduction keeps the reduced argument accurate to ~1e-17.
constexpr double kInvPio2 = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;
constexpr double kLargeArg = 1.0e6;

// sin/cos polynomials on |r| <= pi/4 (fdlibm kernel coefficients)
constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;
constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d vec_cos(__m256d x) {
    const __m256d fn =
        _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kInvPio2)),
                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    // r = x - fn*pio2 in two stages
    __m256d r = _mm256_fnmadd_pd(fn, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(fn, _mm256_set1_pd(kPio2Lo), r);

    const __m256d r2 = _mm256_mul_pd(r, r);

    __m256d ps = _mm256_set1_pd(S6);
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(S5));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(S4));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(S3));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(S2));
    ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(S1));
    const __m256d sinp = _mm256_fmadd_pd(_mm256_mul_pd(ps, r2), r, r);  // r + r^3*poly

    __m256d pc = _mm256_set1_pd(C6);
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(C5));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(C4));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(C3));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(C2));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(C1));
    pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-0.5));
    const __m256d cosp = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(1.0));

    // quadrant selection: cos(x) = {+cos, -sin, -cos, +sin}[q mod 4]
    const __m128i q32 = _mm256_cvtpd_epi32(fn);
    const __m256i q = _mm256_cvtepi32_epi64(q32);
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256d odd_mask =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d neg_mask = _mm256_castsi256_pd(
        _mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), two));

    __m256d val = _mm256_blendv_pd(cosp, sinp, odd_mask);
    val = _mm256_xor_pd(val, _mm256_and_pd(neg_mask, _mm256_set1_pd(-0.0)));
    return val;
}

inline bool any_large(__m256d x) {
    const __m256d absx = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
    const __m256d m = _mm256_cmp_pd(absx, _mm256_set1_pd(kLargeArg), _CMP_GT_OQ);
    return _mm256_movemask_pd(m) != 0;
}

}  // namespace

void fringe_row(double* out, const double* alpha, const double* amp, const double* slope,
                const double* phase0, double opd, std::size_t n) {
    const __m256d vopd = _mm256_set1_pd(opd);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d s = _mm256_loadu_pd(slope + i);
        const __m256d p0 = _mm256_loadu_pd(phase0 + i);
        // plain mul+add keeps the argument bit-identical to the scalar path
        const __m256d arg = _mm256_add_pd(_mm256_mul_pd(s, vopd), p0);
        __m256d cosv;
        if (any_large(arg)) {
            alignas(32) double a[4];
            _mm256_store_pd(a, arg);
            for (int k = 0; k < 4; ++k) a[k] = std::cos(a[k]);
            cosv = _mm256_load_pd(a);
        } else {
            cosv = vec_cos(arg);
        }
        const __m256d va = _mm256_loadu_pd(alpha + i);
        const __m256d vb = _mm256_loadu_pd(amp + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vb, cosv, va));
    }
    for (; i < n; ++i) out[i] = alpha[i] + amp[i] * std::cos(slope[i] * opd + phase0[i]);
}

double max_value(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m = x[0];
    if (n >= 4) {
        __m256d vm = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, _mm256_loadu_pd(x + i));
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, vm);
        m = tmp[0];
        for (int k = 1; k < 4; ++k) m = tmp[k] > m ? tmp[k] : m;
    }
    for (; i < n; ++i) m = x[i] > m ? x[i] : m;
    return m;
}

void scale(double* x, std::size_t n, double factor) {
    const __m256d f = _mm256_set1_pd(factor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), f));
    for (; i < n; ++i) x[i] *= factor;
}

void divide(double* x, std::size_t n, double divisor) {
    const __m256d d = _mm256_set1_pd(divisor);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_div_pd(_mm256_loadu_pd(x + i), d));
    for (; i < n; ++i) x[i] /= divisor;
}

void minmax_update(double* mn, double* mx, const double* row, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(row + i);
        _mm256_storeu_pd(mn + i, _mm256_min_pd(_mm256_loadu_pd(mn + i), r));
        _mm256_storeu_pd(mx + i, _mm256_max_pd(_mm256_loadu_pd(mx + i), r));
    }
    for (; i < n; ++i) {
        mn[i] = row[i] < mn[i] ? row[i] : mn[i];
        mx[i] = row[i] > mx[i] ? row[i] : mx[i];
    }
}

}  // namespace nlifo::kernels::avx2

#endif  // x86-64
