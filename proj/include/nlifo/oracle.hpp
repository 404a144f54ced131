#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlifo/channels.hpp"
#include "nlifo/dispersion.hpp"
#include "nlifo/twinbeam.hpp"

namespace nlifo {

// Brute-force verification layer: fixed-step RK4 integration of the spatial
// equations of motion, plus the randomized cross-module identity battery.
// The integrators only see the generator coefficients (wavevectors, gamma,
// kappa), never the closed-form moment expressions they are checking.

// RK4 of dG/dz = A G over [0, L] for the lossless two-mode generator.
TransferStep integrate_lossless_at(double dk_signal, double dk_idler_neg,
                                   std::complex<double> gamma, double length,
                                   std::size_t steps);
TransferStep integrate_lossless(const DispersionModel& model, const SourceParams& src,
                                double omega, std::size_t steps);

// RK4 of the closed (n_s, n_i, m) moment system with idler decay kappa and a
// vacuum Markovian bath, from vacuum inputs.
PairMoments integrate_dl_at(double dk_signal, double dk_idler_neg, double kappa,
                            std::complex<double> gamma, double length, std::size_t steps);
PairMoments integrate_dl(const DispersionModel& model, const SourceParams& src,
                         const LossProfile& loss, double omega, std::size_t steps);

struct IdentityResult {
    std::string name;
    double worst = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    std::string worst_params;
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::size_t draws = 0;
    std::vector<IdentityResult> identities;
    bool all_pass() const;
};

// Test hooks: deliberately corrupt one formula to prove the battery notices.
struct VerifyFaults {
    bool flip_psi_sign = false;
};

// Randomized identity battery over `draws` parameter sets:
// pure-state |m|^2 = n(n+1); SU(1,1) analytic vs channel pipeline; IC
// analytic vs three-mode pipeline; added-noise quadrature vs antiderivative;
// numeric vs analytic visibility.
VerifyReport verify_identity_suite(std::uint64_t seed, std::size_t draws,
                                   const VerifyFaults& faults = {});

void write_report_text(std::ostream& os, const VerifyReport& report);
void write_report_csv(const std::string& path, const VerifyReport& report);

}  // namespace nlifo
