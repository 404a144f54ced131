#include "nlifo/dl.hpp"

#include <cmath>

#include "nlifo/constants.hpp"
#include "nlifo/parallel.hpp"
#include "nlifo/quadrature.hpp"

namespace nlifo {

namespace {
constexpr std::complex<double> i_unit{0.0, 1.0};
}

std::complex<double> nu_tilde_at(double sigma_k, double kappa, double gamma_mag) {
    const double re = sigma_k * sigma_k - 0.25 * kappa * kappa - 4.0 * gamma_mag * gamma_mag;
    const double im = -sigma_k * kappa;
    if (im == 0.0) {
        if (re >= 0.0) return {std::sqrt(re), 0.0};
        return {0.0, std::sqrt(-re)};
    }
    return std::sqrt(std::complex<double>(re, im));
}

std::complex<double> nu_tilde(const DispersionModel& model, const SourceParams& src,
                              const LossProfile& loss, double gamma_mag, double omega) {
    const double kappa = loss.kappa(src.omega_idler_center() - omega);
    return nu_tilde_at(model.pma(omega), kappa, gamma_mag);
}

double dl_bare_at(double sigma_k, double kappa, double gamma_mag, double z) {
    const std::complex<double> vt = nu_tilde_at(sigma_k, kappa, gamma_mag);
    const std::complex<double> s = detail::half_sinc(vt, z);
    return std::exp(-0.5 * kappa * z) * std::norm(2.0 * gamma_mag * s);
}

double dl_bare(const DispersionModel& model, const SourceParams& src, const LossProfile& loss,
               double omega, double z) {
    const double kappa = loss.kappa(src.omega_idler_center() - omega);
    return dl_bare_at(model.pma(omega), kappa, src.gamma_mag, z);
}

DlContributions dl_signal_at(double sigma_k, double kappa, double gamma_mag, double length) {
    DlContributions out;
    out.bare = dl_bare_at(sigma_k, kappa, gamma_mag, length);
    if (kappa == 0.0) return out;
    const double integral = integrate_refined(
        [&](double z) { return dl_bare_at(sigma_k, kappa, gamma_mag, z); }, 0.0, length, 1e-10);
    out.added_noise = kappa * integral;
    return out;
}

DlContributions dl_signal(const DispersionModel& model, const SourceParams& src,
                          const LossProfile& loss, double omega) {
    const double kappa = loss.kappa(src.omega_idler_center() - omega);
    return dl_signal_at(model.pma(omega), kappa, src.gamma_mag, src.length);
}

double dl_idler_at(double sigma_k, double kappa, double gamma_mag, double length) {
    return dl_bare_at(sigma_k, kappa, gamma_mag, length);
}

double dl_idler(const DispersionModel& model, const SourceParams& src, const LossProfile& loss,
                double omega) {
    const double kappa = loss.kappa(src.omega_idler_center() - omega);
    return dl_idler_at(model.pma(omega), kappa, src.gamma_mag, src.length);
}

DispersionModel anomalous_dispersion_model(const DispersionModel& model,
                                           const LossProfile& loss, const SourceParams& src,
                                           double strength) {
    if (strength == 0.0) return model;
    const double w_i0 = src.omega_idler_center();
    return model.with_idler_shift(
        [loss, w_i0, strength](double w) { return -strength * loss.kappa(w_i0 + w); });
}

namespace {

struct LossyGenerator {
    double sigma_k, delta_k, kappa;
    std::complex<double> gamma;

    // g(z): exponential of the constant generator with -kappa/2 on the idler row
    TransferStep transfer(double z) const {
        const std::complex<double> vt = nu_tilde_at(sigma_k, kappa, std::abs(gamma));
        const std::complex<double> sigma_t{sigma_k, -0.5 * kappa};
        const std::complex<double> s = detail::half_sinc(vt, z);
        const std::complex<double> c = std::cos(0.5 * z * vt);
        const std::complex<double> pre =
            std::exp(0.5 * z * (i_unit * delta_k - 0.5 * kappa));
        TransferStep t;
        t.g11 = pre * (c + i_unit * sigma_t * s);
        t.g12 = pre * (2.0 * i_unit * gamma * s);
        t.g21 = pre * (-2.0 * i_unit * std::conj(gamma) * s);
        t.g22 = pre * (c - i_unit * sigma_t * s);
        return t;
    }
};

}  // namespace

TransferStep dl_transfer_at(double sigma_k, double delta_k, double kappa,
                            std::complex<double> gamma, double length) {
    const LossyGenerator gen{sigma_k, delta_k, kappa, gamma};
    TransferStep t = gen.transfer(length);
    if (kappa == 0.0) return t;
    // W = kappa * int_0^L G(u) P_I G(u)^dag du on the shared refined node set.
    // W11 goes through the identical code path as the dl_signal added-noise
    // quadrature, so the two agree bit for bit.
    const double gamma_mag = std::abs(gamma);
    t.noise11 =
        kappa * integrate_refined(
                    [&](double z) { return dl_bare_at(sigma_k, kappa, gamma_mag, z); }, 0.0,
                    length, 1e-10);
    const RefinedNodes nodes(0.0, length);
    double w22 = 0.0;
    std::complex<double> w12{0.0, 0.0};
    for (std::size_t i = 0; i < nodes.z.size(); ++i) {
        const TransferStep g = gen.transfer(nodes.z[i]);
        w22 += nodes.w[i] * std::norm(g.g22);
        w12 += nodes.w[i] * g.g12 * std::conj(g.g22);
    }
    t.noise22 = kappa * w22;
    t.noise12 = kappa * w12;
    return t;
}

TransferStep dl_transfer(const DispersionModel& model, const SourceParams& src,
                         const LossProfile& loss, double omega, double length) {
    const double kappa = loss.kappa(src.omega_idler_center() - omega);
    const std::complex<double> gamma =
        src.gamma_mag * std::exp(-i_unit * src.pump_phase);
    return dl_transfer_at(model.pma(omega), model.delta_k(omega), kappa, gamma, length);
}

FringeTerms dl_su11_fringe_terms(const DispersionModel& model, const SourceParams& src,
                                 const LossProfile& loss, const FrequencyGrid& grid,
                                 double phi_p) {
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
            const double kappa = loss.kappa(w_i0 - w);
            const double sigma_k = model.pma(w);
            const double delta_k = model.delta_k(w);
            const TransferStep first =
                dl_transfer_at(sigma_k, delta_k, kappa, src.gamma_mag, src.length);
            const PairMoments seed = propagate_moments(first, PairMoments{});
            // second pass carries e^{+i phi_p} so that the analytic grouping
            // Phi = Phi_I - Phi_P holds through the pipeline
            const std::complex<double> gamma2 =
                src.gamma_mag * std::exp(i_unit * phi_p);
            const TransferStep second =
                dl_transfer_at(sigma_k, delta_k, kappa, gamma2, src.length);
            // n_s(phi) = |g11|^2 n1 + |g12|^2 (i1+1) + W11 + 2 Re(c e^{i phi})
            const std::complex<double> cterm =
                std::conj(second.g12) * second.g11 * seed.m;
            t.wavelength[k] = two_pi * c_light / (w_s0 + w);
            t.alpha[k] = std::norm(second.g11) * seed.n_s +
                         std::norm(second.g12) * (seed.n_i + 1.0) + second.noise11;
            t.amp[k] = 2.0 * std::abs(cterm);
            t.slope[k] = (w_i0 - w) / c_light;
            t.phase0[k] = std::arg(cterm);
        }
    });
    return t;
}

Interferogram dl_su11_scan(const DispersionModel& model, const SourceParams& src,
                           const LossProfile& loss, const OpdRange& opds, double phi_p,
                           const FrequencyGrid& grid) {
    return sweep_opd(dl_su11_fringe_terms(model, src, loss, grid, phi_p),
                     InterferogramKind::dl_su11, opds);
}

LossCompare loss_compare(const DispersionModel& model, const SourceParams& src,
                         const LossProfile& loss, double omega) {
    LossCompare out;
    out.dl_idler = dl_idler(model, src, loss, omega);
    const double eta = loss.eta(src.omega_idler_center() - omega);
    out.bs_idler = eta * vacuum_moments(model, src, omega).n_s;
    return out;
}

DlContributionCurves dl_contributions_report(const DispersionModel& model,
                                             const SourceParams& src, const LossProfile& loss,
                                             const FrequencyGrid& grid) {
    grid.validate();
    const double w_s0 = src.omega_signal_center();
    DlContributionCurves out;
    out.wavelength.resize(grid.n_bins);
    out.bare.resize(grid.n_bins);
    out.added.resize(grid.n_bins);
    out.total.resize(grid.n_bins);
    parallel_for(grid.n_bins, [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
            const double w = grid.omega(k);
            const DlContributions c = dl_signal(model, src, loss, w);
            out.wavelength[k] = two_pi * c_light / (w_s0 + w);
            out.bare[k] = c.bare;
            out.added[k] = c.added_noise;
            out.total[k] = c.total();
        }
    });
    return out;
}

}  // namespace nlifo
