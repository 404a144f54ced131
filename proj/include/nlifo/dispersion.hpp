#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace nlifo {

enum class Mode { signal, idler };

std::string mode_name(Mode m);

// Uniform angular-frequency detuning grid; bin k sits at omega0 + k*delta.
struct FrequencyGrid {
    double omega0 = 0.0;       // rad/s
    double delta_omega = 1.0;  // rad/s, > 0
    std::size_t n_bins = 0;

    double omega(std::size_t k) const { return omega0 + static_cast<double>(k) * delta_omega; }
    void validate() const;
    static FrequencyGrid symmetric(double half_span, std::size_t n_bins);
};

// CW source description. Center wavelengths obey 1/lp = 1/ls + 1/li.
struct SourceParams {
    double lambda_pump = 0.0;           // m
    double lambda_signal_center = 0.0;  // m
    double lambda_idler_center = 0.0;   // m
    double length = 0.0;                // m, interaction length L
    double poling_period = 0.0;         // m
    double gamma_mag = 0.0;             // 1/m
    double pump_phase = 0.0;            // rad

    double omega_signal_center() const;
    double omega_idler_center() const;
    void validate() const;

    // Derives the signal center from pump and idler centers.
    static SourceParams make(double lambda_pump, double lambda_idler_center, double length,
                             double poling_period, double gamma_mag, double pump_phase);
};

// lambda' with 1/lambda_pump = 1/lambda + 1/lambda'
double conjugate_wavelength(double lambda_pump, double lambda);

// gamma from the lossless phase-matched peak photon number sinh^2(gamma L)
double calibrate_gamma(double n_peak, double length);

struct TaylorMode {
    double inv_group_velocity = 0.0;  // s/m
    double gvd = 0.0;                 // s^2/m
    double third_order = 0.0;         // s^3/m

    bool operator==(const TaylorMode&) const = default;
};

// One mode's sampled wavevector: detuning axis (rad/s, strictly increasing)
// and k values (rad/m). Interpolated with a natural cubic spline; evaluation
// outside the nodes is a domain error, never extrapolation.
struct DispersionTable {
    std::vector<double> omega;
    std::vector<double> k;
};

class DispersionModel {
  public:
    static DispersionModel taylor(const TaylorMode& signal, const TaylorMode& idler,
                                  double pma_offset);
    static DispersionModel tabulated(DispersionTable signal, DispersionTable idler,
                                     double pma_offset);

    // Delta k_mode(omega) = k_mode(omega) - k_mode(0), omega a detuning
    double detuned_wavevector(Mode mode, double omega) const;

    // Sigma_K(omega) = dk_S(omega) + dk_I(-omega) + pma_offset
    double pma(double omega) const;

    // DeltaK(omega) = dk_S(omega) - dk_I(-omega)
    double delta_k(double omega) const;

    double pma_offset() const { return pma_offset_; }
    bool is_taylor() const { return kind_ == Kind::taylor; }
    const TaylorMode& taylor_mode(Mode m) const;

    // Returns a copy whose idler wavevector is shifted by shift(omega_idler_detuning).
    DispersionModel with_idler_shift(std::function<double(double)> shift) const;

  private:
    enum class Kind { taylor, tabulated };

    struct Spline {
        std::vector<double> x, y, y2;  // y2: second derivatives (natural BC)
        void build();
        double eval(double xq, Mode mode) const;  // mode only for error text
    };

    Kind kind_ = Kind::taylor;
    TaylorMode taylor_signal_, taylor_idler_;
    Spline spline_signal_, spline_idler_;
    double pma_offset_ = 0.0;
    std::function<double(double)> idler_shift_;  // empty = no shift

    double base_wavevector(Mode mode, double omega) const;
};

// Reads `mode,omega_rad_per_s,k_rad_per_m` CSV blocks (modes: signal, idler).
std::map<Mode, DispersionTable> load_dispersion_table(const std::string& path);

struct LossPeak {
    double center_wavelength = 0.0;  // m
    double transmission = 1.0;       // (0, 1] at the peak center
    double sigma_lambda = 0.0;       // m

    bool operator==(const LossPeak&) const = default;
};

// Frequency-dependent idler decay rate: sum of Gaussians in angular frequency,
// each scaled so that exp(-kappa L) at the peak center equals the quoted
// transmission. eta(omega) = exp(-kappa(omega) L).
struct LossProfile {
    std::vector<LossPeak> peaks;
    double reference_length = 1.0;  // m

    double kappa(double omega_abs) const;  // 1/m
    double eta(double omega_abs) const;    // dimensionless
    void validate() const;
};

// sigma_lambda -> sigma_omega about a peak center
double sigma_lambda_to_omega(double sigma_lambda, double center_wavelength);

// Third-order engineered coefficient (tau_S - tau_I) such that the first
// lossless intensity zero sits at +/- bandwidth/2; solved by bisection on the
// first zero of the single-pass spectrum.
double calibrate_plateau_third_order(double bandwidth_hz, double gamma_mag, double length);

}  // namespace nlifo
