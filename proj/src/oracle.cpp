#include "nlifo/oracle.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nlifo/constants.hpp"
#include "nlifo/dl.hpp"
#include "nlifo/ic.hpp"
#include "nlifo/interferometry.hpp"
#include "nlifo/su11.hpp"

namespace nlifo {

namespace {

constexpr std::complex<double> i_unit{0.0, 1.0};

using Mat2 = std::array<std::complex<double>, 4>;  // row-major 2x2

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 axpy(const Mat2& a, const Mat2& b, double f) {
    return {a[0] + f * b[0], a[1] + f * b[1], a[2] + f * b[2], a[3] + f * b[3]};
}

}  // namespace

TransferStep integrate_lossless_at(double dk_signal, double dk_idler_neg,
                                   std::complex<double> gamma, double length,
                                   std::size_t steps) {
    if (steps < 100) throw std::domain_error("RK4 oracle needs >= 100 steps");
    // The generator's trace is a scalar: it commutes with everything and only
    // contributes the common phase exp(i (dk_s - dk_i) z / 2). Splitting it
    // off exactly lets the RK4 resolve the physical scales (sum wavevector,
    // gain) instead of the group-velocity carrier, which for engineered
    // dispersions is orders of magnitude faster than anything observable.
    const double half_sum = 0.5 * (dk_signal + dk_idler_neg);
    const double half_diff = 0.5 * (dk_signal - dk_idler_neg);
    const Mat2 gen{i_unit * half_sum, i_unit * gamma, -i_unit * std::conj(gamma),
                   -i_unit * half_sum};
    Mat2 g{1.0, 0.0, 0.0, 1.0};
    const double h = length / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        const Mat2 k1 = mul(gen, g);
        const Mat2 k2 = mul(gen, axpy(g, k1, 0.5 * h));
        const Mat2 k3 = mul(gen, axpy(g, k2, 0.5 * h));
        const Mat2 k4 = mul(gen, axpy(g, k3, h));
        for (int i = 0; i < 4; ++i)
            g[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const std::complex<double> carrier = std::exp(i_unit * (half_diff * length));
    TransferStep t;
    t.g11 = carrier * g[0];
    t.g12 = carrier * g[1];
    t.g21 = carrier * g[2];
    t.g22 = carrier * g[3];
    return t;
}

TransferStep integrate_lossless(const DispersionModel& model, const SourceParams& src,
                                double omega, std::size_t steps) {
    // split pma/delta_k back into effective per-mode detunings so the QPM
    // offset enters the generator the same way as in the closed forms
    const double sum = model.pma(omega);
    const double diff = model.delta_k(omega);
    const std::complex<double> gamma =
        src.gamma_mag * std::exp(-i_unit * src.pump_phase);
    return integrate_lossless_at(0.5 * (sum + diff), 0.5 * (sum - diff), gamma, src.length,
                                 steps);
}

namespace {

struct MomentState {
    double n_s, n_i;
    std::complex<double> m;
};

MomentState deriv(const MomentState& s, double sigma_k, double kappa,
                  std::complex<double> gamma) {
    MomentState d;
    d.n_s = 2.0 * std::imag(std::conj(gamma) * s.m);
    d.n_i = -kappa * s.n_i + 2.0 * std::imag(std::conj(gamma) * s.m);
    d.m = (i_unit * sigma_k - 0.5 * kappa) * s.m +
          i_unit * gamma * (s.n_s + s.n_i + 1.0);
    return d;
}

}  // namespace

PairMoments integrate_dl_at(double dk_signal, double dk_idler_neg, double kappa,
                            std::complex<double> gamma, double length, std::size_t steps) {
    if (steps < 100) throw std::domain_error("RK4 oracle needs >= 100 steps");
    const double sigma_k = dk_signal + dk_idler_neg;
    MomentState s{0.0, 0.0, {0.0, 0.0}};
    const double h = length / static_cast<double>(steps);
    auto add = [](const MomentState& a, const MomentState& b, double f) {
        return MomentState{a.n_s + f * b.n_s, a.n_i + f * b.n_i, a.m + f * b.m};
    };
    for (std::size_t k = 0; k < steps; ++k) {
        const MomentState k1 = deriv(s, sigma_k, kappa, gamma);
        const MomentState k2 = deriv(add(s, k1, 0.5 * h), sigma_k, kappa, gamma);
        const MomentState k3 = deriv(add(s, k2, 0.5 * h), sigma_k, kappa, gamma);
        const MomentState k4 = deriv(add(s, k3, h), sigma_k, kappa, gamma);
        s.n_s += (h / 6.0) * (k1.n_s + 2.0 * k2.n_s + 2.0 * k3.n_s + k4.n_s);
        s.n_i += (h / 6.0) * (k1.n_i + 2.0 * k2.n_i + 2.0 * k3.n_i + k4.n_i);
        s.m += (h / 6.0) * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    }
    PairMoments pm;
    pm.n_s = s.n_s;
    pm.n_i = s.n_i;
    pm.m = s.m;
    return pm;
}

PairMoments integrate_dl(const DispersionModel& model, const SourceParams& src,
                         const LossProfile& loss, double omega, std::size_t steps) {
    const double sum = model.pma(omega);
    const double diff = model.delta_k(omega);
    const double kappa = loss.kappa(src.omega_idler_center() - omega);
    const std::complex<double> gamma =
        src.gamma_mag * std::exp(-i_unit * src.pump_phase);
    return integrate_dl_at(0.5 * (sum + diff), 0.5 * (sum - diff), kappa, gamma, src.length,
                           steps);
}

bool VerifyReport::all_pass() const {
    for (const auto& r : identities)
        if (!r.pass) return false;
    return true;
}

namespace {

// deterministic uniform in [0, 1) independent of the standard library
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

struct Draw {
    double length, gamma_mag, sigma_k, delta_k, kappa, eta, phi_i, phi_p;
    std::string describe() const {
        std::ostringstream os;
        os.precision(6);
        os << "L=" << length << " gammaL=" << gamma_mag * length
           << " sigmaL=" << sigma_k * length << " dKL=" << delta_k * length
           << " kappaL=" << kappa * length << " eta=" << eta << " phi_i=" << phi_i
           << " phi_p=" << phi_p;
        return os.str();
    }
};

Draw sample_draw(std::mt19937_64& rng) {
    Draw d;
    d.length = uniform(rng, 0.01, 0.08);
    d.gamma_mag = uniform(rng, 0.01, 3.0) / d.length;
    d.sigma_k = uniform(rng, -3.0 * pi, 3.0 * pi) / d.length;
    d.delta_k = uniform(rng, -3.0 * pi, 3.0 * pi) / d.length;
    d.kappa = uniform(rng, 0.0, 5.0) / d.length;
    d.eta = uniform(rng, 0.01, 1.0);
    d.phi_i = uniform(rng, 0.0, two_pi);
    d.phi_p = uniform(rng, 0.0, two_pi);
    return d;
}

struct IdentityTracker {
    IdentityResult res;
    explicit IdentityTracker(std::string name, double tol) {
        res.name = std::move(name);
        res.tolerance = tol;
    }
    void update(double dev, const Draw& d) {
        if (dev > res.worst) {
            res.worst = dev;
            res.worst_params = d.describe();
        }
    }
    IdentityResult finish() {
        res.pass = res.worst <= res.tolerance;
        return res;
    }
};

double rel_dev(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / scale;
}

// Antiderivative of exp(-kappa z) |2 gamma sin(nu_tilde z/2)/nu_tilde|^2 on
// [0, L]; uses |sin w|^2 = (cosh(2 Im w) - cos(2 Re w))/2. Independent route
// against the Gauss-Legendre quadrature.
double added_noise_antiderivative(double sigma_k, double kappa, double gamma_mag,
                                  double length) {
    const std::complex<double> vt = nu_tilde_at(sigma_k, kappa, gamma_mag);
    const double p = vt.real(), q = vt.imag();
    const double a = -0.5 * kappa;
    const double scale = 4.0 * gamma_mag * gamma_mag / std::norm(vt);
    auto int_exp = [length](double x) {  // int_0^L e^{x z} dz
        if (std::abs(x * length) < 1e-8) {
            const double t = x * length;
            return length * (1.0 + 0.5 * t + t * t / 6.0);
        }
        return std::expm1(x * length) / x;
    };
    const double cosh_part = 0.5 * (int_exp(a + q) + int_exp(a - q));
    double cos_part;
    const double den = a * a + p * p;
    if (den == 0.0) {
        cos_part = length;
    } else {
        cos_part = (std::exp(a * length) * (a * std::cos(p * length) + p * std::sin(p * length)) -
                    a) /
                   den;
    }
    return kappa * scale * 0.5 * (cosh_part - cos_part);
}

}  // namespace

VerifyReport verify_identity_suite(std::uint64_t seed, std::size_t draws,
                                   const VerifyFaults& faults) {
    VerifyReport report;
    report.seed = seed;
    report.draws = draws;

    IdentityTracker pure("pure_state_moment", 1e-10);
    IdentityTracker su11p("su11_pipeline", 1e-10);
    IdentityTracker icp("ic_pipeline", 1e-10);
    IdentityTracker quad("dl_added_noise_quadrature", 1e-10);
    IdentityTracker vis("visibility_numeric_vs_analytic", 1e-2);

    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < draws; ++k) {
        const Draw d = sample_draw(rng);

        // pure-state identity
        const PairMoments vac = vacuum_moments_at(d.sigma_k, d.gamma_mag, d.phi_p, d.length);
        pure.update(rel_dev(std::norm(vac.m), vac.n_s * (vac.n_s + 1.0)), d);

        // SU(1,1): analytic vs squeezer -> loss/phase -> squeezer
        double ana_ns, ana_ni;
        if (!faults.flip_psi_sign) {
            const Su11Intensities ana = su11_intensities_at(d.sigma_k, d.gamma_mag, d.length,
                                                            d.eta, d.phi_i, d.phi_p);
            ana_ns = ana.n_s;
            ana_ni = ana.n_i;
        } else {
            const double n = vac.n_s;
            const double m2 = n * (n + 1.0);
            const double psi = -psi_phase_at(d.sigma_k, d.gamma_mag, d.length);
            const double osc =
                2.0 * std::sqrt(d.eta) * std::cos(d.phi_i - d.phi_p + psi) * m2;
            ana_ns = 2.0 * n + n * n * (1.0 + d.eta) - osc;
            ana_ni = n * (1.0 + d.eta) + n * n * (1.0 + d.eta) - osc;
        }
        {
            const TransferStep first =
                lossless_transfer_at(d.sigma_k, d.delta_k, d.gamma_mag, d.length);
            const PairMoments after1 = propagate_moments(first, PairMoments{});
            const PairMoments lossy = apply_idler_loss_phase(after1, d.eta, d.phi_i);
            const std::complex<double> gamma2 =
                d.gamma_mag * std::exp(i_unit * d.phi_p);
            const TransferStep second =
                lossless_transfer_at(d.sigma_k, d.delta_k, gamma2, d.length);
            const PairMoments out = propagate_moments(second, lossy);
            su11p.update(rel_dev(ana_ns, out.n_s), d);
            su11p.update(rel_dev(ana_ni, out.n_i), d);
        }

        // IC: analytic vs signal-spectator three-mode pipeline
        {
            const double n_v = vac.n_s;
            const IcIntensities ana = ic_intensities_at(n_v, d.eta);
            const double phase =
                0.5 * d.delta_k * d.length - (d.phi_i - d.phi_p) -
                0.5 * psi_phase_at(d.sigma_k, d.gamma_mag, d.length);
            const std::complex<double> cross_ana = ic_cross_moment_at(n_v, d.eta, phase);
            const BbsArms arms_ana = bbs_arms_at(n_v, d.eta, phase);

            const TransferStep first =
                lossless_transfer_at(d.sigma_k, d.delta_k, d.gamma_mag, d.length);
            const PairMoments after1 = propagate_moments(first, PairMoments{});
            const PairMoments lossy = apply_idler_loss_phase(after1, d.eta, d.phi_i);
            const std::complex<double> gamma2 =
                d.gamma_mag * std::exp(i_unit * d.phi_p);
            const TransferStep second =
                lossless_transfer_at(d.sigma_k, d.delta_k, gamma2, d.length);
            // second pass seeded by (ancilla vacuum, lossy idler), cross moment 0
            PairMoments pair2;
            pair2.n_s = 0.0;
            pair2.n_i = lossy.n_i;
            pair2.m = {0.0, 0.0};
            const PairMoments out2 = propagate_moments(second, pair2);
            // <a_S^dag a_A> through the pipeline (the balanced-splitter port
            // convention maps its arms to minus/plus of the analytic form)
            const std::complex<double> cross_pipe =
                second.g12 * std::sqrt(d.eta) *
                std::exp(-i_unit * d.phi_i) * std::conj(after1.m);
            const double plus_pipe =
                0.5 * (after1.n_s + out2.n_s - 2.0 * std::real(cross_pipe));
            const double minus_pipe =
                0.5 * (after1.n_s + out2.n_s + 2.0 * std::real(cross_pipe));

            icp.update(rel_dev(ana.n_i, out2.n_i), d);
            icp.update(rel_dev(ana.n_a, out2.n_s), d);
            icp.update(rel_dev(std::abs(cross_ana), std::abs(cross_pipe)), d);
            icp.update(rel_dev(arms_ana.n_plus, plus_pipe), d);
            icp.update(rel_dev(arms_ana.n_minus, minus_pipe), d);
        }

        // added-noise quadrature vs antiderivative
        {
            const DlContributions c =
                dl_signal_at(d.sigma_k, d.kappa, d.gamma_mag, d.length);
            const double closed =
                added_noise_antiderivative(d.sigma_k, d.kappa, d.gamma_mag, d.length);
            quad.update(rel_dev(c.added_noise, closed), d);
        }

        // visibility of a dense synthetic sweep vs the closed formula
        {
            const PairMoments pm = vacuum_moments_at(d.sigma_k, d.gamma_mag, 0.0, d.length);
            const double n = pm.n_s;
            if (n > 1e-12) {
                FringeTerms terms;
                terms.wavelength = {850e-9};
                terms.alpha = {2.0 * n + n * n * (1.0 + d.eta)};
                terms.amp = {-2.0 * std::sqrt(d.eta) * std::norm(pm.m)};
                const double slope = 2.0e6;  // rad per meter of OPD
                terms.slope = {slope};
                terms.phase0 = {d.phi_i};
                OpdRange range{0.0, 2.0 * two_pi / slope, 512};
                const Interferogram ifg =
                    sweep_opd(terms, InterferogramKind::su11, range);
                const VisibilityTrace tr = visibility_numeric(ifg);
                const double ana = visibility_analytic(InterferometerKind::su11, n, d.eta);
                vis.update(std::abs(tr.v[0] - ana) / ana, d);
            }
        }
    }

    report.identities.push_back(pure.finish());
    report.identities.push_back(su11p.finish());
    report.identities.push_back(icp.finish());
    report.identities.push_back(quad.finish());
    report.identities.push_back(vis.finish());
    return report;
}

void write_report_text(std::ostream& os, const VerifyReport& report) {
    os << "identity battery: seed=" << report.seed << " draws=" << report.draws << "\n";
    for (const auto& r : report.identities) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  worst=" << r.worst
           << "  tol=" << r.tolerance;
        if (!r.worst_params.empty()) os << "  at " << r.worst_params;
        os << "\n";
    }
}

void write_report_csv(const std::string& path, const VerifyReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << "identity,worst,tolerance,pass,worst_params\n";
    for (const auto& r : report.identities) {
        out << r.name << ',' << r.worst << ',' << r.tolerance << ',' << (r.pass ? 1 : 0) << ",\""
            << r.worst_params << "\"\n";
    }
}

}  // namespace nlifo
