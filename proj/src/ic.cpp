#include "nlifo/ic.hpp"

#include <cmath>

#include "nlifo/constants.hpp"
#include "nlifo/parallel.hpp"

namespace nlifo {

IcIntensities ic_intensities_at(double n_v, double eta) {
    IcIntensities out;
    out.n_s = n_v;
    out.n_i = n_v + eta * n_v * (1.0 + n_v);
    out.n_a = n_v * (1.0 + eta * n_v);
    return out;
}

IcIntensities ic_intensities(const DispersionModel& model, const SourceParams& src,
                             const LossProfile& loss, double omega) {
    const double n_v = vacuum_moments(model, src, omega).n_s;
    const double eta = loss.eta(src.omega_idler_center() - omega);
    return ic_intensities_at(n_v, eta);
}

std::complex<double> ic_cross_moment_at(double n_v, double eta, double phase) {
    const double mag = std::sqrt(eta) * n_v * std::sqrt(1.0 + n_v);
    return mag * std::exp(std::complex<double>(0.0, phase));
}

namespace {

double cross_phase(const DispersionModel& model, const SourceParams& src, double phi_i,
                   double phi_p, double omega) {
    const double psi = psi_phase(model, src, omega);
    return 0.5 * model.delta_k(omega) * src.length - (phi_i - phi_p) - 0.5 * psi;
}

}  // namespace

std::complex<double> ic_cross_moment(const DispersionModel& model, const SourceParams& src,
                                     const LossProfile& loss, const PhaseFn& phi_i, double phi_p,
                                     double omega) {
    const double n_v = vacuum_moments(model, src, omega).n_s;
    const double eta = loss.eta(src.omega_idler_center() - omega);
    return ic_cross_moment_at(n_v, eta, cross_phase(model, src, phi_i(omega), phi_p, omega));
}

BbsArms bbs_arms_at(double n_v, double eta, double phase) {
    const IcIntensities in = ic_intensities_at(n_v, eta);
    const double im = std::imag(ic_cross_moment_at(n_v, eta, phase));
    BbsArms out;
    out.n_plus = 0.5 * (in.n_s + in.n_a + 2.0 * im);
    out.n_minus = 0.5 * (in.n_s + in.n_a - 2.0 * im);
    return out;
}

BbsArms bbs_arms(const DispersionModel& model, const SourceParams& src, const LossProfile& loss,
                 const PhaseFn& phi_i, double phi_p, double omega) {
    const double n_v = vacuum_moments(model, src, omega).n_s;
    const double eta = loss.eta(src.omega_idler_center() - omega);
    return bbs_arms_at(n_v, eta, cross_phase(model, src, phi_i(omega), phi_p, omega));
}

PhaseFn cancel_linear_deltak(const DispersionModel& model, const SourceParams& src) {
    // five-point slope of DeltaK at 0, exact through quartic terms
    const double h = 1e10;
    const double slope =
        (8.0 * (model.delta_k(h) - model.delta_k(-h)) - (model.delta_k(2 * h) - model.delta_k(-2 * h))) /
        (12.0 * h);
    const double half_length = 0.5 * src.length;
    return [slope, half_length](double w) { return slope * w * half_length; };
}

PhaseFn cancel_full_deltak(const DispersionModel& model, const SourceParams& src) {
    const double half_length = 0.5 * src.length;
    return [model, half_length](double w) { return model.delta_k(w) * half_length; };
}

FringeTerms ic_bbs_fringe_terms(const DispersionModel& model, const SourceParams& src,
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
            const double n = vacuum_moments(model, src, w).n_s;
            const double eta = loss.eta(w_i0 - w);
            t.wavelength[k] = two_pi * c_light / (w_s0 + w);
            t.alpha[k] = 0.5 * (2.0 * n + eta * n * n);
            // n_plus = alpha + A sin(theta0 - slope*opd) with
            // theta0 = dK L/2 - static - (-phi_p) - Psi/2; rewrite as cosine
            const double theta0 = 0.5 * model.delta_k(w) * src.length - static_phase(w) +
                                  phi_p - 0.5 * psi_phase(model, src, w);
            t.amp[k] = std::sqrt(eta) * n * std::sqrt(1.0 + n);
            t.slope[k] = (w_i0 - w) / c_light;
            t.phase0[k] = 0.5 * pi - theta0;
        }
    });
    return t;
}

}  // namespace nlifo
