#pragma once

#include <complex>
#include <vector>

#include "nlifo/dispersion.hpp"

namespace nlifo {

// Second-order moments of one conjugate frequency pair: photon numbers at
// signal detuning +w and idler detuning -w, plus the anomalous moment
// m = <a_S(w) a_I(-w)>.
struct PairMoments {
    double n_s = 0.0;
    double n_i = 0.0;
    std::complex<double> m{0.0, 0.0};

    // |m|^2 - (n_s n_i + min(n_s, n_i)); <= 0 for physical states
    double physicality_defect() const;
    bool is_physical(double rel_tol = 1e-6) const;
};

struct SpectrumCurve {
    std::vector<double> wavelength;  // m, signal side
    std::vector<double> value;
    bool normalized = false;
};

// nu = sqrt(Sigma_K^2 - 4 gamma^2); purely imaginary inside the gain region
std::complex<double> nu(double sigma_k, double gamma_mag);

namespace detail {
// sin(nu z / 2) / nu with the removable nu -> 0 singularity handled by series
std::complex<double> half_sinc(const std::complex<double>& nu, double z);
}  // namespace detail

// Closed-form lossless single-pass moments at one phase-matching argument.
PairMoments vacuum_moments_at(double sigma_k, double gamma_mag, double pump_phase,
                              double length);
PairMoments vacuum_moments(const DispersionModel& model, const SourceParams& src, double omega);

// Phase of the squared anomalous moment, branch-safe:
// 2 arg(cos(nu L/2) + i (Sigma_K/nu) sin(nu L/2)) + pi
double psi_phase_at(double sigma_k, double gamma_mag, double length);
double psi_phase(const DispersionModel& model, const SourceParams& src, double omega);

// Divides by the maximum; requires at least one strictly positive value.
SpectrumCurve normalize(SpectrumCurve curve);

}  // namespace nlifo
