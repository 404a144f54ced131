#pragma once

#include <cstddef>
#include <string>

namespace nlifo::kernels {

// Batch kernels for the grid-assembly inner loops. Every kernel exists as a
// scalar reference implementation and, on x86-64, an AVX2 variant; the active
// backend is picked once at runtime (overridable through NLIFO_SIMD =
// scalar|avx2|auto). The AVX2 variants are equivalence-tested against the
// scalar ones.

enum class Backend { scalar, avx2 };

bool avx2_supported();
Backend active_backend();
void set_backend(Backend b);  // throws std::runtime_error if unsupported
std::string backend_name(Backend b);

// out[i] = alpha[i] + amp[i] * cos(slope[i] * opd + phase0[i])
void fringe_row(double* out, const double* alpha, const double* amp, const double* slope,
                const double* phase0, double opd, std::size_t n);

// max over x (n >= 1)
double max_value(const double* x, std::size_t n);

void scale(double* x, std::size_t n, double factor);

// x[i] /= divisor; exact 1.0 where x[i] == divisor, so normalized spectra
// peak at exactly unity
void divide(double* x, std::size_t n, double divisor);

// mn[i] = min(mn[i], row[i]); mx[i] = max(mx[i], row[i])
void minmax_update(double* mn, double* mx, const double* row, std::size_t n);

namespace scalar {
void fringe_row(double* out, const double* alpha, const double* amp, const double* slope,
                const double* phase0, double opd, std::size_t n);
double max_value(const double* x, std::size_t n);
void scale(double* x, std::size_t n, double factor);
void divide(double* x, std::size_t n, double divisor);
void minmax_update(double* mn, double* mx, const double* row, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void fringe_row(double* out, const double* alpha, const double* amp, const double* slope,
                const double* phase0, double opd, std::size_t n);
double max_value(const double* x, std::size_t n);
void scale(double* x, std::size_t n, double factor);
void divide(double* x, std::size_t n, double divisor);
void minmax_update(double* mn, double* mx, const double* row, std::size_t n);
}  // namespace avx2
#endif

}  // namespace nlifo::kernels
