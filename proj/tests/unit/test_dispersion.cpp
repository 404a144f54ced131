#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "nlifo/config.hpp"
#include "nlifo/constants.hpp"
#include "nlifo/dispersion.hpp"
#include "nlifo/twinbeam.hpp"

using namespace nlifo;

namespace {

DispersionModel engineered_model(double pma_offset = 0.0) {
    const Config c = preset_flat_low_gain();
    return DispersionModel::taylor(c.dispersion.signal, c.dispersion.idler, pma_offset);
}

}  // namespace

TEST_CASE("frequency grid") {
    FrequencyGrid g = FrequencyGrid::symmetric(9e13, 2049);
    g.validate();
    CHECK(g.omega(0) == doctest::Approx(-9e13));
    CHECK(g.omega(2048) == doctest::Approx(9e13));
    CHECK(g.omega(1024) == doctest::Approx(0.0).epsilon(1e-12));
    for (std::size_t k = 1; k < 16; ++k) CHECK(g.omega(k) > g.omega(k - 1));
    CHECK_THROWS_AS(FrequencyGrid::symmetric(-1.0, 4), std::domain_error);
    FrequencyGrid bad;
    bad.n_bins = 3;
    bad.delta_omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("source params energy conservation") {
    SourceParams s = SourceParams::make(644e-9, 2.8e-6, 0.04, 6.1879e-6, 5.0, 0.0);
    CHECK(1.0 / s.lambda_pump ==
          doctest::Approx(1.0 / s.lambda_signal_center + 1.0 / s.lambda_idler_center)
              .epsilon(1e-13));
    SourceParams broken = s;
    broken.lambda_signal_center *= 1.0 + 1e-6;
    CHECK_THROWS_AS(broken.validate(), std::domain_error);
    broken = s;
    broken.length = 0.0;
    CHECK_THROWS_AS(broken.validate(), std::domain_error);
    broken = s;
    broken.gamma_mag = -1.0;
    CHECK_THROWS_AS(broken.validate(), std::domain_error);
}

TEST_CASE("conjugate wavelength") {
    CHECK(conjugate_wavelength(644e-9, 2750e-9) ==
          doctest::Approx(8.4093067426400763e-07).epsilon(1e-14));
    CHECK(conjugate_wavelength(644e-9, 2850e-9) ==
          doctest::Approx(8.3200362647325473e-07).epsilon(1e-14));
    // degenerate point maps to itself
    CHECK(conjugate_wavelength(644e-9, 1288e-9) == doctest::Approx(1288e-9).epsilon(1e-14));
    CHECK_THROWS_AS(conjugate_wavelength(644e-9, 600e-9), std::domain_error);
    CHECK_THROWS_AS(conjugate_wavelength(644e-9, 644e-9), std::domain_error);

    // round trip is the identity
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        const double lam = 700e-9 + (rng() % 1000000) * 4e-15;
        const double back = conjugate_wavelength(644e-9, conjugate_wavelength(644e-9, lam));
        CHECK(back == doctest::Approx(lam).epsilon(1e-12));
    }
}

TEST_CASE("taylor detuned wavevector") {
    TaylorMode lin{5e-9, 0.0, 0.0};
    DispersionModel m = DispersionModel::taylor(lin, lin, 0.0);
    CHECK(m.detuned_wavevector(Mode::signal, 0.0) == 0.0);
    CHECK(m.detuned_wavevector(Mode::idler, 0.0) == 0.0);
    CHECK(m.detuned_wavevector(Mode::signal, 1e12) == doctest::Approx(5e3).epsilon(1e-14));
}

TEST_CASE("delta_k engineered form") {
    const double v_inv = 7.3e-9, beta = 1.0e-24;
    DispersionModel m = DispersionModel::taylor({v_inv, beta, 0.0}, {v_inv, -beta, 0.0}, 0.0);
    CHECK(m.delta_k(0.0) == 0.0);
    for (double w : {-8e13, -3e13, 1e12, 5e13}) {
        CHECK(m.delta_k(w) ==
              doctest::Approx(2.0 * w * v_inv + beta * w * w).epsilon(1e-13));
    }
}

TEST_CASE("pma offset and symmetry") {
    // residual offset between the two quoted poling periods
    const double off = two_pi * (1.0 / 6.1879e-6 - 1.0 / 6.1883e-6);
    CHECK(off == doctest::Approx(65.633446997496776).epsilon(1e-12));

    DispersionModel skew = engineered_model(-off);
    // plateau region detuned by the offset: cubic term tiny near center
    CHECK(skew.pma(0.0) == doctest::Approx(-65.633446997496776).epsilon(1e-12));

    // matched group velocities, opposite GVDs, no cubic: Sigma_K is even in
    // omega (it collapses to the constant offset)
    std::mt19937_64 rng(3);
    auto u = [&](double lo, double hi) {
        return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
    };
    for (int k = 0; k < 50; ++k) {
        const double vi = u(1e-9, 1e-8), beta = u(-1e-23, 1e-23), offset = u(-100, 100);
        DispersionModel m = DispersionModel::taylor({vi, beta, 0.0}, {vi, -beta, 0.0}, offset);
        const double w = u(1e11, 8e13);
        CHECK(m.pma(w) == doctest::Approx(m.pma(-w)).epsilon(1e-10));
        CHECK(m.pma(w) == doctest::Approx(offset).epsilon(1e-9));
        // the two contributions enter the sum symmetrically
        const double sum = m.detuned_wavevector(Mode::signal, w) +
                           m.detuned_wavevector(Mode::idler, -w);
        CHECK(m.pma(w) - m.pma_offset() == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("tabulated model matches its taylor source") {
    DispersionModel taylor = engineered_model();
    // wide margin so the natural-spline boundary residue decays away
    const double span = 1.4e14;
    const std::size_t n = 2400;
    DispersionTable ts, ti;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = -span + 2.0 * span * static_cast<double>(k) / (n - 1);
        ts.omega.push_back(w);
        ts.k.push_back(taylor.detuned_wavevector(Mode::signal, w));
        ti.omega.push_back(w);
        ti.k.push_back(taylor.detuned_wavevector(Mode::idler, w));
    }
    DispersionModel tab = DispersionModel::tabulated(ts, ti, 0.0);
    for (double w = -9e13; w <= 9e13; w += 1.37e12) {
        const double a = taylor.pma(w), b = tab.pma(w);
        CHECK(b == doctest::Approx(a).epsilon(1e-9));
        CHECK(tab.delta_k(w) == doctest::Approx(taylor.delta_k(w)).epsilon(1e-9));
        CHECK(tab.detuned_wavevector(Mode::signal, w) ==
              doctest::Approx(taylor.detuned_wavevector(Mode::signal, w)).epsilon(1e-9));
    }
    CHECK(tab.detuned_wavevector(Mode::signal, 0.0) == 0.0);

    CHECK_THROWS_WITH_AS(tab.detuned_wavevector(Mode::signal, 1.5e14),
                         doctest::Contains("signal"), std::domain_error);
    CHECK_THROWS_WITH_AS(tab.detuned_wavevector(Mode::idler, -1.5e14),
                         doctest::Contains("idler"), std::domain_error);
}

TEST_CASE("dispersion table file loader") {
    const std::string path = "disp_table_test.csv";
    {
        std::ofstream f(path);
        f << "mode,omega_rad_per_s,k_rad_per_m\n";
        for (int k = 0; k < 8; ++k) f << "signal," << k * 1e12 - 4e12 << "," << k * 10.0 << "\n";
        for (int k = 0; k < 8; ++k) f << "idler," << k * 1e12 - 4e12 << "," << k * -5.0 << "\n";
    }
    auto tables = load_dispersion_table(path);
    CHECK(tables.at(Mode::signal).omega.size() == 8);
    CHECK(tables.at(Mode::idler).k[1] == doctest::Approx(-5.0));

    {
        std::ofstream f(path);
        f << "wrong,header,row\n";
    }
    CHECK_THROWS_AS(load_dispersion_table(path), std::runtime_error);
    {
        std::ofstream f(path);
        f << "mode,omega_rad_per_s,k_rad_per_m\n";
        f << "pump,0,0\n";
    }
    CHECK_THROWS_WITH_AS(load_dispersion_table(path), doctest::Contains("unknown mode"),
                         std::runtime_error);
    {
        // non-monotone axis rejected at model build
        std::ofstream f(path);
        f << "mode,omega_rad_per_s,k_rad_per_m\n";
        for (int k = 0; k < 6; ++k) f << "signal,0.0," << k << "\n";
        for (int k = 0; k < 6; ++k) f << "idler," << k << ",0.0\n";
    }
    auto bad = load_dispersion_table(path);
    CHECK_THROWS_AS(DispersionModel::tabulated(bad.at(Mode::signal), bad.at(Mode::idler), 0.0),
                    std::domain_error);
    std::remove(path.c_str());
}

TEST_CASE("loss profile kappa and eta") {
    LossProfile profile;
    profile.reference_length = 0.04;
    profile.peaks = {{2.75e-6, 0.01, 20e-9}, {2.85e-6, 0.30, 10e-9}};
    profile.validate();

    const double w1 = two_pi * c_light / 2.75e-6;
    const double w2 = two_pi * c_light / 2.85e-6;
    // the other peak's tail contributes ~1e-3 1/m at most
    CHECK(profile.kappa(w1) == doctest::Approx(115.12925464970228).epsilon(1e-4));
    CHECK(profile.eta(w1) == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(profile.kappa(w2) == doctest::Approx(30.099320108148401).epsilon(1e-4));
    CHECK(profile.eta(w2) == doctest::Approx(0.30).epsilon(1e-4));
    // far from every peak the idler flies free
    CHECK(profile.kappa(two_pi * c_light / 2.0e-6) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(profile.eta(two_pi * c_light / 2.0e-6) == doctest::Approx(1.0).epsilon(1e-12));

    LossProfile empty;
    empty.reference_length = 0.04;
    CHECK(empty.kappa(w1) == 0.0);
    CHECK(empty.eta(w1) == 1.0);

    LossProfile bad = profile;
    bad.peaks[0].transmission = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = profile;
    bad.peaks[1].transmission = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("loss profile properties on random peak sets") {
    std::mt19937_64 rng(11);
    auto u = [&](double lo, double hi) {
        return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 60; ++trial) {
        LossProfile p;
        p.reference_length = u(0.001, 0.1);
        const int npeaks = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < npeaks; ++k)
            p.peaks.push_back({u(1e-6, 4e-6), u(0.001, 1.0), u(1e-9, 60e-9)});
        p.validate();
        for (int s = 0; s < 40; ++s) {
            const double w = u(0.3, 1.3) * two_pi * c_light / 2.8e-6;
            const double k = p.kappa(w);
            const double e = p.eta(w);
            CHECK(k >= 0.0);
            CHECK(e > 0.0);
            CHECK(e <= 1.0);
            CHECK(e == doctest::Approx(std::exp(-k * p.reference_length)).epsilon(1e-15));
        }
        // peak-center value is pinned by the quoted transmission
        const auto& pk = p.peaks[0];
        const double kc = -std::log(pk.transmission) / p.reference_length;
        const double others =
            p.kappa(two_pi * c_light / pk.center_wavelength) - kc;  // tails of other peaks
        CHECK(others >= -1e-12);
    }
}

TEST_CASE("sigma_lambda to sigma_omega conversion") {
    CHECK(sigma_lambda_to_omega(20e-9, 2750e-9) ==
          doctest::Approx(4981557863957.2979).epsilon(1e-12));
}

TEST_CASE("gamma calibration") {
    CHECK(calibrate_gamma(0.0, 0.04) == 0.0);
    const double g_low = calibrate_gamma(0.04, 0.04);
    CHECK(g_low * 0.04 == doctest::Approx(0.19869011034924142).epsilon(1e-14));
    CHECK(std::pow(std::sinh(g_low * 0.04), 2) == doctest::Approx(0.04).epsilon(1e-12));
    const double g_high = calibrate_gamma(14.0, 0.04);
    CHECK(g_high * 0.04 == doctest::Approx(2.0300728063742017).epsilon(1e-14));
    CHECK(std::pow(std::sinh(g_high * 0.04), 2) == doctest::Approx(14.0).epsilon(1e-12));
    CHECK_THROWS_AS(calibrate_gamma(-0.1, 0.04), std::domain_error);
}

TEST_CASE("default third-order coefficient spans the target plateau") {
    const Config c = preset_flat_low_gain();
    const DispersionModel m = engineered_model();
    const SourceParams src = c.make_source();
    // first intensity zero should sit at +/- 11.5 THz within 1%
    const double target = pi * 23e12;
    const double n_just_inside = vacuum_moments(m, src, 0.995 * target).n_s;
    const double n_at = vacuum_moments(m, src, target).n_s;
    CHECK(n_at < 1e-6 * n_just_inside);
    // calibration helper reproduces the stored coefficient
    const double tau_sum = calibrate_plateau_third_order(23e12, src.gamma_mag, src.length);
    CHECK(tau_sum == doctest::Approx(2.0 * 1.2516267823111265e-39).epsilon(1e-9));
}
