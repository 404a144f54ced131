#pragma once

#include <functional>

#include "nlifo/channels.hpp"
#include "nlifo/dispersion.hpp"
#include "nlifo/interferometry.hpp"
#include "nlifo/twinbeam.hpp"

namespace nlifo {

// Extra idler phase as a function of the signal-side detuning (the idler sits
// at -omega); OPD phases and cancellation phases are built as PhaseFn.
using PhaseFn = std::function<double(double omega)>;

inline PhaseFn zero_phase() {
    return [](double) { return 0.0; };
}

struct Su11Intensities {
    double n_s = 0.0;
    double n_i = 0.0;
};

// Two identical lossless squeezers with a beamsplitter loss/phase on the idler
// in between; first-pass pump phase is the zero reference, the second pass
// carries phi_p.
Su11Intensities su11_intensities_at(double sigma_k, double gamma_mag, double length, double eta,
                                    double phi_i, double phi_p);
Su11Intensities su11_intensities(const DispersionModel& model, const SourceParams& src,
                                 const LossProfile& loss, const PhaseFn& phi_i, double phi_p,
                                 double omega);

// Normalized oscillation models of the signal fringe term.
// Low-gain form: cos(Phi + Sigma_K L).
double osc_lowgain(const DispersionModel& model, const SourceParams& src, const PhaseFn& phi_i,
                   double omega);
// All-gain form: cos(Phi + Psi); include_pi keeps the +pi constant of Psi
// (dropping it flips the sign, both conventions are emitted by the CLI).
double osc_general(const DispersionModel& model, const SourceParams& src, const PhaseFn& phi_i,
                   double phi_p, double omega, bool include_pi = true);

// Gain-dependent phase approximation (tanh(gamma L)/gamma) Sigma_K (+pi).
double psi_gain_approx_at(double sigma_k, double gamma_mag, double length,
                          bool include_pi = true);
double psi_gain_approx(const DispersionModel& model, const SourceParams& src, double omega,
                       bool include_pi = true);

// Per-bin fringe coefficients for OPD sweeps. static_phase is any extra idler
// phase besides the OPD carrier.
FringeTerms su11_fringe_terms(const DispersionModel& model, const SourceParams& src,
                              const LossProfile& loss, const FrequencyGrid& grid, double phi_p,
                              const PhaseFn& static_phase = zero_phase());

}  // namespace nlifo
