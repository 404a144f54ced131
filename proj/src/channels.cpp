#include "nlifo/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "nlifo/constants.hpp"

namespace nlifo {

namespace {
constexpr std::complex<double> i_unit{0.0, 1.0};
}

double commutator_defect_signal(const TransferStep& s) {
    return (std::norm(s.g11) - std::norm(s.g12)) - 1.0;
}

double commutator_defect_idler(const TransferStep& s) {
    return 1.0 - (std::norm(s.g22) - std::norm(s.g21));
}

PairMoments apply_idler_loss_phase(const PairMoments& in, double eta, double phi_i) {
    if (eta < 0.0 || eta > 1.0)
        throw std::domain_error("idler transmission must be in [0, 1]");
    PairMoments out = in;
    out.n_i = eta * in.n_i;
    out.m = std::sqrt(eta) * std::exp(i_unit * phi_i) * in.m;
    return out;
}

double opd_phase(double opd, double omega, double omega_idler_center) {
    return (omega_idler_center - omega) * opd / c_light;
}

TransferStep lossless_transfer_at(double sigma_k, double delta_k, std::complex<double> gamma,
                                  double z) {
    const std::complex<double> v = nu(sigma_k, std::abs(gamma));
    const std::complex<double> s = detail::half_sinc(v, z);
    const std::complex<double> c = std::cos(0.5 * z * v);
    const std::complex<double> pre = std::exp(i_unit * (0.5 * delta_k * z));
    TransferStep t;
    t.g11 = pre * (c + i_unit * sigma_k * s);
    t.g12 = pre * (2.0 * i_unit * gamma * s);
    t.g21 = pre * (-2.0 * i_unit * std::conj(gamma) * s);
    t.g22 = pre * (c - i_unit * sigma_k * s);
    return t;
}

TransferStep lossless_transfer(const DispersionModel& model, const SourceParams& src,
                               double omega, double z) {
    if (z < 0.0) throw std::domain_error("propagation distance must be >= 0");
    const std::complex<double> gamma =
        src.gamma_mag * std::exp(-i_unit * src.pump_phase);
    return lossless_transfer_at(model.pma(omega), model.delta_k(omega), gamma, z);
}

PairMoments propagate_moments(const TransferStep& step, const PairMoments& in) {
    if (in.n_s < 0.0 || in.n_i < 0.0 || !in.is_physical())
        throw std::domain_error("unphysical input moments");
    PairMoments out;
    out.n_s = std::norm(step.g11) * in.n_s + std::norm(step.g12) * (in.n_i + 1.0) +
              2.0 * std::real(std::conj(step.g12) * step.g11 * in.m) + step.noise11;
    out.n_i = std::norm(step.g21) * (in.n_s + 1.0) + std::norm(step.g22) * in.n_i +
              2.0 * std::real(step.g21 * std::conj(step.g22) * in.m);
    out.m = step.g11 * std::conj(step.g21) * (in.n_s + 1.0) +
            step.g12 * std::conj(step.g22) * in.n_i + step.g11 * std::conj(step.g22) * in.m +
            step.g12 * std::conj(step.g21) * std::conj(in.m);
    return out;
}

TransferStep compose(const TransferStep& a, const TransferStep& b) {
    TransferStep c;
    c.g11 = b.g11 * a.g11 + b.g12 * a.g21;
    c.g12 = b.g11 * a.g12 + b.g12 * a.g22;
    c.g21 = b.g21 * a.g11 + b.g22 * a.g21;
    c.g22 = b.g21 * a.g12 + b.g22 * a.g22;
    // congruence transport of a's noise: b W_a b^dag, then add b's own
    const std::complex<double> w11 = a.noise11, w22 = a.noise22, w12 = a.noise12;
    const std::complex<double> w21 = std::conj(w12);
    // rows of (W_a b^dag)
    const std::complex<double> r11 = w11 * std::conj(b.g11) + w12 * std::conj(b.g12);
    const std::complex<double> r12 = w11 * std::conj(b.g21) + w12 * std::conj(b.g22);
    const std::complex<double> r21 = w21 * std::conj(b.g11) + w22 * std::conj(b.g12);
    const std::complex<double> r22 = w21 * std::conj(b.g21) + w22 * std::conj(b.g22);
    c.noise11 = std::real(b.g11 * r11 + b.g12 * r21) + b.noise11;
    c.noise22 = std::real(b.g21 * r12 + b.g22 * r22) + b.noise22;
    c.noise12 = b.g11 * r12 + b.g12 * r22 + b.noise12;
    return c;
}

}  // namespace nlifo
