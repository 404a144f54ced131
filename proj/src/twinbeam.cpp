#include "nlifo/twinbeam.hpp"

#include <cmath>
#include <stdexcept>

#include "nlifo/constants.hpp"
#include "nlifo/kernels.hpp"

namespace nlifo {

double PairMoments::physicality_defect() const {
    return std::norm(m) - (n_s * n_i + std::min(n_s, n_i));
}

bool PairMoments::is_physical(double rel_tol) const {
    return physicality_defect() <= rel_tol * std::max(1.0, std::norm(m));
}

std::complex<double> nu(double sigma_k, double gamma_mag) {
    const double d = sigma_k * sigma_k - 4.0 * gamma_mag * gamma_mag;
    if (d >= 0.0) return {std::sqrt(d), 0.0};
    return {0.0, std::sqrt(-d)};
}

namespace detail {

std::complex<double> half_sinc(const std::complex<double>& nu, double z) {
    const std::complex<double> x = 0.5 * z * nu;
    if (std::abs(x) < 1e-6) {
        const std::complex<double> x2 = x * x;
        return 0.5 * z * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
    }
    return std::sin(x) / nu;
}

}  // namespace detail

PairMoments vacuum_moments_at(double sigma_k, double gamma_mag, double pump_phase,
                              double length) {
    const std::complex<double> v = nu(sigma_k, gamma_mag);
    const std::complex<double> s = detail::half_sinc(v, length);
    const std::complex<double> bracket =
        std::cos(0.5 * length * v) + std::complex<double>(0.0, 1.0) * sigma_k * s;
    PairMoments pm;
    pm.n_s = std::norm(2.0 * gamma_mag * s);
    pm.n_i = pm.n_s;
    const std::complex<double> gamma =
        gamma_mag * std::exp(std::complex<double>(0.0, -pump_phase));
    pm.m = std::complex<double>(0.0, 2.0) * gamma * std::conj(s) * bracket;
    return pm;
}

PairMoments vacuum_moments(const DispersionModel& model, const SourceParams& src, double omega) {
    return vacuum_moments_at(model.pma(omega), src.gamma_mag, src.pump_phase, src.length);
}

double psi_phase_at(double sigma_k, double gamma_mag, double length) {
    const std::complex<double> v = nu(sigma_k, gamma_mag);
    const std::complex<double> s = detail::half_sinc(v, length);
    const std::complex<double> bracket =
        std::cos(0.5 * length * v) + std::complex<double>(0.0, 1.0) * sigma_k * s;
    return 2.0 * std::arg(bracket) + pi;
}

double psi_phase(const DispersionModel& model, const SourceParams& src, double omega) {
    return psi_phase_at(model.pma(omega), src.gamma_mag, src.length);
}

SpectrumCurve normalize(SpectrumCurve curve) {
    if (curve.value.empty()) throw std::domain_error("cannot normalize null spectrum");
    const double mx = kernels::max_value(curve.value.data(), curve.value.size());
    if (!(mx > 0.0)) throw std::domain_error("cannot normalize null spectrum");
    kernels::divide(curve.value.data(), curve.value.size(), mx);
    curve.normalized = true;
    return curve;
}

}  // namespace nlifo
