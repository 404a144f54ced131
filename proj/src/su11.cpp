#include "nlifo/su11.hpp"

#include <cmath>

#include "nlifo/constants.hpp"
#include "nlifo/parallel.hpp"

namespace nlifo {

Su11Intensities su11_intensities_at(double sigma_k, double gamma_mag, double length, double eta,
                                    double phi_i, double phi_p) {
    const PairMoments pm = vacuum_moments_at(sigma_k, gamma_mag, 0.0, length);
    const double n = pm.n_s;
    const double m2 = std::norm(pm.m);
    const double psi = psi_phase_at(sigma_k, gamma_mag, length);
    const double osc = 2.0 * std::sqrt(eta) * std::cos(phi_i - phi_p + psi) * m2;
    Su11Intensities out;
    out.n_s = 2.0 * n + n * n * (1.0 + eta) - osc;
    out.n_i = n * (1.0 + eta) + n * n * (1.0 + eta) - osc;
    return out;
}

Su11Intensities su11_intensities(const DispersionModel& model, const SourceParams& src,
                                 const LossProfile& loss, const PhaseFn& phi_i, double phi_p,
                                 double omega) {
    const double eta = loss.eta(src.omega_idler_center() - omega);
    return su11_intensities_at(model.pma(omega), src.gamma_mag, src.length, eta, phi_i(omega),
                               phi_p);
}

double osc_lowgain(const DispersionModel& model, const SourceParams& src, const PhaseFn& phi_i,
                   double omega) {
    return std::cos(phi_i(omega) + model.pma(omega) * src.length);
}

double osc_general(const DispersionModel& model, const SourceParams& src, const PhaseFn& phi_i,
                   double phi_p, double omega, bool include_pi) {
    double psi = psi_phase(model, src, omega);
    if (!include_pi) psi -= pi;
    return std::cos(phi_i(omega) - phi_p + psi);
}

double psi_gain_approx_at(double sigma_k, double gamma_mag, double length, bool include_pi) {
    const double coeff =
        gamma_mag > 0.0 ? std::tanh(gamma_mag * length) / gamma_mag : length;
    return coeff * sigma_k + (include_pi ? pi : 0.0);
}

double psi_gain_approx(const DispersionModel& model, const SourceParams& src, double omega,
                       bool include_pi) {
    return psi_gain_approx_at(model.pma(omega), src.gamma_mag, src.length, include_pi);
}

FringeTerms su11_fringe_terms(const DispersionModel& model, const SourceParams& src,
                              const LossProfile& loss, const FrequencyGrid& grid, double phi_p,
                              const PhaseFn& static_phase) {
    grid.validate();
    const double w_s0 = src.omega_signal_center();
    const double w_i0 = src.omega_idler_center();
    FringeTerms t;
    t.wavelength.resize(grid.n_bins);
    t.alpha.resize(grid.n_bins);
    t.amp.resize(grid.n_bins);
    t.slope.resize(grid.n_bins);
    t.phase0.resize(grid.n_bins);
    parallel_for(grid.n_bins, [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const double w = grid.omega(k);
            const double sigma_k = model.pma(w);
            const PairMoments pm = vacuum_moments_at(sigma_k, src.gamma_mag, 0.0, src.length);
            const double eta = loss.eta(w_i0 - w);
            const double n = pm.n_s;
            t.wavelength[k] = two_pi * c_light / (w_s0 + w);
            t.alpha[k] = 2.0 * n + n * n * (1.0 + eta);
            t.amp[k] = -2.0 * std::sqrt(eta) * std::norm(pm.m);
            t.slope[k] = (w_i0 - w) / c_light;
            t.phase0[k] =
                psi_phase_at(sigma_k, src.gamma_mag, src.length) - phi_p + static_phase(w);
        }
    });
    return t;
}

}  // namespace nlifo
