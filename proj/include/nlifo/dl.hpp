#pragma once

#include <complex>
#include <vector>

#include "nlifo/channels.hpp"
#include "nlifo/dispersion.hpp"
#include "nlifo/interferometry.hpp"
#include "nlifo/su11.hpp"

namespace nlifo {

// Distributed idler loss inside the nonlinear region (Heisenberg-Langevin
// with decay kappa_I and a vacuum Markovian bath).

struct DlContributions {
    double bare = 0.0;         // attenuated coherent build-up
    double added_noise = 0.0;  // bath-injected, re-amplified contribution
    double total() const { return bare + added_noise; }
};

// sqrt(Sigma_tilde^2 - 4 gamma^2) with Sigma_tilde = Sigma_K - i kappa/2.
// On the kappa == 0 (or Sigma_K == 0) branch cut the +i side is taken,
// matching nu().
std::complex<double> nu_tilde_at(double sigma_k, double kappa, double gamma_mag);
std::complex<double> nu_tilde(const DispersionModel& model, const SourceParams& src,
                              const LossProfile& loss, double gamma_mag, double omega);

// exp(-kappa z/2) |2 gamma sin(nu_tilde z/2)/nu_tilde|^2
double dl_bare_at(double sigma_k, double kappa, double gamma_mag, double z);
double dl_bare(const DispersionModel& model, const SourceParams& src, const LossProfile& loss,
               double omega, double z);

// Signal intensity: bare(L) + kappa * int_0^L bare(z) dz with the integral on
// the shared Gauss-Legendre node set.
DlContributions dl_signal_at(double sigma_k, double kappa, double gamma_mag, double length);
DlContributions dl_signal(const DispersionModel& model, const SourceParams& src,
                          const LossProfile& loss, double omega);

// Idler intensity: bare(L) only (no added-noise term).
double dl_idler_at(double sigma_k, double kappa, double gamma_mag, double length);
double dl_idler(const DispersionModel& model, const SourceParams& src, const LossProfile& loss,
                double omega);

// Idler wavevector shifted by -strength * kappa_I at the idler's own
// frequency; no added absorption.
DispersionModel anomalous_dispersion_model(const DispersionModel& model,
                                           const LossProfile& loss, const SourceParams& src,
                                           double strength = 0.1);

// Transfer step of one lossy region: closed-form g, bath-noise matrix by
// quadrature on the same nodes as dl_signal (noise11 is bit-identical to the
// added-noise term).
TransferStep dl_transfer_at(double sigma_k, double delta_k, double kappa,
                            std::complex<double> gamma, double length);
TransferStep dl_transfer(const DispersionModel& model, const SourceParams& src,
                         const LossProfile& loss, double omega, double length);

// Per-bin fringe coefficients for the DL-SU(1,1): two lossy regions with an
// idler-only OPD in between, no extra beamsplitter loss.
FringeTerms dl_su11_fringe_terms(const DispersionModel& model, const SourceParams& src,
                                 const LossProfile& loss, const FrequencyGrid& grid,
                                 double phi_p);

// vacuum -> dl_transfer -> idler OPD phase -> dl_transfer(phi_p) -> n_s
Interferogram dl_su11_scan(const DispersionModel& model, const SourceParams& src,
                           const LossProfile& loss, const OpdRange& opds, double phi_p,
                           const FrequencyGrid& grid);

struct LossCompare {
    double dl_idler = 0.0;  // distributed-loss idler intensity
    double bs_idler = 0.0;  // beamsplitter model: eta * n_v after the loss
};
LossCompare loss_compare(const DispersionModel& model, const SourceParams& src,
                         const LossProfile& loss, double omega);

struct DlContributionCurves {
    std::vector<double> wavelength;
    std::vector<double> bare;
    std::vector<double> added;
    std::vector<double> total;
};
DlContributionCurves dl_contributions_report(const DispersionModel& model,
                                             const SourceParams& src, const LossProfile& loss,
                                             const FrequencyGrid& grid);

}  // namespace nlifo
