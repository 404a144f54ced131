#pragma once

#include <complex>

#include "nlifo/dispersion.hpp"
#include "nlifo/interferometry.hpp"
#include "nlifo/su11.hpp"

namespace nlifo {

// Induced-coherence interferometer: the second squeezer is seeded by the
// lossy idler and a vacuum ancilla at the signal band; the signal itself
// skips the second pass.
struct IcIntensities {
    double n_s = 0.0;
    double n_i = 0.0;
    double n_a = 0.0;
};

IcIntensities ic_intensities_at(double n_v, double eta);
IcIntensities ic_intensities(const DispersionModel& model, const SourceParams& src,
                             const LossProfile& loss, double omega);

// Signal-ancilla mixed moment: magnitude sqrt(eta) n sqrt(1+n), phase
// DeltaK L/2 - Phi - Psi/2 with Phi = phi_i - phi_p.
std::complex<double> ic_cross_moment_at(double n_v, double eta, double phase);
std::complex<double> ic_cross_moment(const DispersionModel& model, const SourceParams& src,
                                     const LossProfile& loss, const PhaseFn& phi_i, double phi_p,
                                     double omega);

struct BbsArms {
    double n_plus = 0.0;
    double n_minus = 0.0;
};

// Balanced 50:50 recombination of signal and ancilla:
// n_pm = (n_s + n_a +- 2 Im(cross)) / 2.
BbsArms bbs_arms_at(double n_v, double eta, double cross_phase);
BbsArms bbs_arms(const DispersionModel& model, const SourceParams& src, const LossProfile& loss,
                 const PhaseFn& phi_i, double phi_p, double omega);

// Phase functions that cancel the linear part of DeltaK(w) L/2 (or all of it)
// inside the cross-moment argument.
PhaseFn cancel_linear_deltak(const DispersionModel& model, const SourceParams& src);
PhaseFn cancel_full_deltak(const DispersionModel& model, const SourceParams& src);

// Fringe coefficients for the n_plus arm under an OPD sweep; static_phase is
// added on top of the OPD carrier (e.g. the linear-cancellation phase).
FringeTerms ic_bbs_fringe_terms(const DispersionModel& model, const SourceParams& src,
                                const LossProfile& loss, const FrequencyGrid& grid, double phi_p,
                                const PhaseFn& static_phase = zero_phase());

}  // namespace nlifo
