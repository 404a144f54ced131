#pragma once

#include <complex>

#include "nlifo/dispersion.hpp"
#include "nlifo/twinbeam.hpp"

namespace nlifo {

// One propagation segment acting on the pair (a_S(w), a_I^dag(-w)):
// a 2x2 complex Bogoliubov matrix g plus the Hermitian matrix of accumulated
// bath-noise second moments W = kappa * int G P_I G^dag dz. For a vacuum bath
// the moment updates only need W11 (signal added noise); the full matrix is
// kept for commutator bookkeeping: G J G^dag - W = J with J = diag(1, -1).
struct TransferStep {
    std::complex<double> g11{1.0, 0.0};
    std::complex<double> g12{0.0, 0.0};
    std::complex<double> g21{0.0, 0.0};
    std::complex<double> g22{1.0, 0.0};
    double noise11 = 0.0;
    double noise22 = 0.0;
    std::complex<double> noise12{0.0, 0.0};

    static TransferStep identity() { return {}; }
};

// (|g11|^2 - |g12|^2) - 1; equals noise11 when commutation is preserved
double commutator_defect_signal(const TransferStep& s);
// 1 - (|g22|^2 - |g21|^2); equals noise22 when commutation is preserved
double commutator_defect_idler(const TransferStep& s);

// Beamsplitter loss/extra phase on the idler: n_i -> eta n_i,
// m -> sqrt(eta) e^{i phi_i} m, signal untouched.
PairMoments apply_idler_loss_phase(const PairMoments& in, double eta, double phi_i);

// Idler phase from an optical path delay: (omega_idler_center - omega) * opd / c,
// evaluated at idler detuning -omega (omega is the signal-side detuning).
double opd_phase(double opd, double omega, double omega_idler_center);

// Closed-form exponential of the constant two-mode generator. gamma carries
// the pump phase; sigma_k and delta_k are the sum/difference wavevector
// arguments of the segment.
TransferStep lossless_transfer_at(double sigma_k, double delta_k, std::complex<double> gamma,
                                  double z);
TransferStep lossless_transfer(const DispersionModel& model, const SourceParams& src,
                               double omega, double z);

// Gaussian-moment update through a step (vacuum bath).
PairMoments propagate_moments(const TransferStep& step, const PairMoments& in);

// b after a: g = g_b g_a, noise = g_b noise_a g_b^dag + noise_b
TransferStep compose(const TransferStep& a, const TransferStep& b);

}  // namespace nlifo
