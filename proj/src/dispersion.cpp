#include "nlifo/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nlifo/constants.hpp"

namespace nlifo {

std::string mode_name(Mode m) { return m == Mode::signal ? "signal" : "idler"; }

void FrequencyGrid::validate() const {
    if (n_bins == 0) throw std::domain_error("frequency grid needs at least one bin");
    if (!(delta_omega > 0.0)) throw std::domain_error("frequency grid spacing must be > 0");
}

FrequencyGrid FrequencyGrid::symmetric(double half_span, std::size_t n_bins) {
    if (n_bins < 2) throw std::domain_error("symmetric grid needs >= 2 bins");
    if (!(half_span > 0.0)) throw std::domain_error("grid half span must be > 0");
    FrequencyGrid g;
    g.n_bins = n_bins;
    g.delta_omega = 2.0 * half_span / static_cast<double>(n_bins - 1);
    g.omega0 = -half_span;
    return g;
}

double SourceParams::omega_signal_center() const { return two_pi * c_light / lambda_signal_center; }
double SourceParams::omega_idler_center() const { return two_pi * c_light / lambda_idler_center; }

void SourceParams::validate() const {
    if (!(lambda_pump > 0.0) || !(lambda_signal_center > 0.0) || !(lambda_idler_center > 0.0))
        throw std::domain_error("wavelengths must be positive");
    if (!(length > 0.0)) throw std::domain_error("interaction length must be > 0");
    if (!(poling_period > 0.0)) throw std::domain_error("poling period must be > 0");
    if (gamma_mag < 0.0) throw std::domain_error("interaction strength must be >= 0");
    const double lhs = 1.0 / lambda_pump;
    const double rhs = 1.0 / lambda_signal_center + 1.0 / lambda_idler_center;
    if (std::abs(lhs - rhs) > 1e-12 * lhs)
        throw std::domain_error("center wavelengths violate energy conservation");
}

SourceParams SourceParams::make(double lambda_pump, double lambda_idler_center, double length,
                                double poling_period, double gamma_mag, double pump_phase) {
    SourceParams s;
    s.lambda_pump = lambda_pump;
    s.lambda_idler_center = lambda_idler_center;
    s.lambda_signal_center = conjugate_wavelength(lambda_pump, lambda_idler_center);
    s.length = length;
    s.poling_period = poling_period;
    s.gamma_mag = gamma_mag;
    s.pump_phase = pump_phase;
    s.validate();
    return s;
}

double conjugate_wavelength(double lambda_pump, double lambda) {
    if (!(lambda_pump > 0.0)) throw std::domain_error("pump wavelength must be positive");
    if (!(lambda > lambda_pump))
        throw std::domain_error("wavelength must exceed the pump wavelength");
    return 1.0 / (1.0 / lambda_pump - 1.0 / lambda);
}

double calibrate_gamma(double n_peak, double length) {
    if (n_peak < 0.0) throw std::domain_error("peak photon number must be >= 0");
    if (!(length > 0.0)) throw std::domain_error("length must be > 0");
    return std::asinh(std::sqrt(n_peak)) / length;
}

// ---- natural cubic spline ----

void DispersionModel::Spline::build() {
    const std::size_t n = x.size();
    if (n < 4) throw std::domain_error("dispersion table needs at least 4 samples per mode");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1]))
            throw std::domain_error("dispersion table frequency axis must be strictly increasing");
    y2.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
        const double p = sig * y2[i - 1] + 2.0;
        y2[i] = (sig - 1.0) / p;
        u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
        u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 0;) y2[i] = y2[i] * y2[i + 1] + u[i];
}

double DispersionModel::Spline::eval(double xq, Mode mode) const {
    if (xq < x.front() || xq > x.back()) {
        std::ostringstream os;
        os << mode_name(mode) << " dispersion table domain is [" << x.front() << ", " << x.back()
           << "] rad/s; requested " << xq;
        throw std::domain_error(os.str());
    }
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const std::size_t hi = std::min<std::size_t>(x.size() - 1, std::max<std::ptrdiff_t>(1, it - x.begin()));
    const std::size_t lo = hi - 1;
    const double h = x[hi] - x[lo];
    const double a = (x[hi] - xq) / h;
    const double b = (xq - x[lo]) / h;
    return a * y[lo] + b * y[hi] +
           ((a * a * a - a) * y2[lo] + (b * b * b - b) * y2[hi]) * h * h / 6.0;
}

// ---- DispersionModel ----

DispersionModel DispersionModel::taylor(const TaylorMode& signal, const TaylorMode& idler,
                                        double pma_offset) {
    DispersionModel m;
    m.kind_ = Kind::taylor;
    m.taylor_signal_ = signal;
    m.taylor_idler_ = idler;
    m.pma_offset_ = pma_offset;
    return m;
}

DispersionModel DispersionModel::tabulated(DispersionTable signal, DispersionTable idler,
                                           double pma_offset) {
    DispersionModel m;
    m.kind_ = Kind::tabulated;
    m.spline_signal_.x = std::move(signal.omega);
    m.spline_signal_.y = std::move(signal.k);
    m.spline_signal_.build();
    m.spline_idler_.x = std::move(idler.omega);
    m.spline_idler_.y = std::move(idler.k);
    m.spline_idler_.build();
    m.pma_offset_ = pma_offset;
    return m;
}

const TaylorMode& DispersionModel::taylor_mode(Mode m) const {
    if (kind_ != Kind::taylor)
        throw std::domain_error("taylor coefficients requested from a tabulated model");
    return m == Mode::signal ? taylor_signal_ : taylor_idler_;
}

double DispersionModel::base_wavevector(Mode mode, double omega) const {
    if (kind_ == Kind::taylor) {
        const TaylorMode& t = mode == Mode::signal ? taylor_signal_ : taylor_idler_;
        return omega * (t.inv_group_velocity +
                        omega * (0.5 * t.gvd + omega * t.third_order / 6.0));
    }
    const Spline& s = mode == Mode::signal ? spline_signal_ : spline_idler_;
    return s.eval(omega, mode) - s.eval(0.0, mode);
}

double DispersionModel::detuned_wavevector(Mode mode, double omega) const {
    double dk = base_wavevector(mode, omega);
    if (mode == Mode::idler && idler_shift_) dk += idler_shift_(omega);
    return dk;
}

double DispersionModel::pma(double omega) const {
    return detuned_wavevector(Mode::signal, omega) + detuned_wavevector(Mode::idler, -omega) +
           pma_offset_;
}

double DispersionModel::delta_k(double omega) const {
    return detuned_wavevector(Mode::signal, omega) - detuned_wavevector(Mode::idler, -omega);
}

DispersionModel DispersionModel::with_idler_shift(std::function<double(double)> shift) const {
    DispersionModel m = *this;
    if (!m.idler_shift_) {
        m.idler_shift_ = std::move(shift);
    } else {
        auto prev = m.idler_shift_;
        auto next = std::move(shift);
        m.idler_shift_ = [prev, next](double w) { return prev(w) + next(w); };
    }
    return m;
}

std::map<Mode, DispersionTable> load_dispersion_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dispersion table: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty dispersion table: " + path);
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "mode,omega_rad_per_s,k_rad_per_m")
        throw std::runtime_error(path + ": expected header mode,omega_rad_per_s,k_rad_per_m");
    std::map<Mode, DispersionTable> tables;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = strip(line);
        if (t.empty()) continue;
        std::istringstream ss(t);
        std::string mode_s, omega_s, k_s;
        if (!std::getline(ss, mode_s, ',') || !std::getline(ss, omega_s, ',') ||
            !std::getline(ss, k_s))
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
        Mode mode;
        const std::string ms = strip(mode_s);
        if (ms == "signal")
            mode = Mode::signal;
        else if (ms == "idler")
            mode = Mode::idler;
        else
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown mode '" +
                                     ms + "'");
        try {
            tables[mode].omega.push_back(std::stod(omega_s));
            tables[mode].k.push_back(std::stod(k_s));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    if (tables.count(Mode::signal) == 0 || tables.count(Mode::idler) == 0)
        throw std::runtime_error(path + ": table must contain both signal and idler blocks");
    return tables;
}

// ---- loss profile ----

double sigma_lambda_to_omega(double sigma_lambda, double center_wavelength) {
    return two_pi * c_light * sigma_lambda / (center_wavelength * center_wavelength);
}

void LossProfile::validate() const {
    if (!(reference_length > 0.0)) throw std::domain_error("loss reference length must be > 0");
    for (const auto& p : peaks) {
        if (!(p.center_wavelength > 0.0))
            throw std::domain_error("loss peak center wavelength must be > 0");
        if (!(p.transmission > 0.0) || p.transmission > 1.0)
            throw std::domain_error("loss peak transmission must be in (0, 1]");
        if (!(p.sigma_lambda > 0.0)) throw std::domain_error("loss peak width must be > 0");
    }
}

double LossProfile::kappa(double omega_abs) const {
    double k = 0.0;
    for (const auto& p : peaks) {
        const double w_c = two_pi * c_light / p.center_wavelength;
        const double s_w = sigma_lambda_to_omega(p.sigma_lambda, p.center_wavelength);
        const double d = (omega_abs - w_c) / s_w;
        k += (-std::log(p.transmission) / reference_length) * std::exp(-0.5 * d * d);
    }
    return k;
}

double LossProfile::eta(double omega_abs) const {
    return std::exp(-kappa(omega_abs) * reference_length);
}

// ---- plateau calibration ----

namespace {

// First positive zero of the lossless spectrum for Sigma_K = tau_sum w^3 / 6:
// the zero sits where Sigma_K^2 = (2 pi / L)^2 + 4 gamma^2.
double first_zero_omega(double tau_sum, double gamma_mag, double length) {
    const double sigma_zero =
        std::sqrt(std::pow(two_pi / length, 2) + 4.0 * gamma_mag * gamma_mag);
    return std::cbrt(6.0 * sigma_zero / std::abs(tau_sum));
}

}  // namespace

double calibrate_plateau_third_order(double bandwidth_hz, double gamma_mag, double length) {
    if (!(bandwidth_hz > 0.0)) throw std::domain_error("bandwidth must be > 0");
    const double target = pi * bandwidth_hz;  // half-span in rad/s
    double lo = 1e-45, hi = 1e-30;
    // first zero decreases as |tau| grows
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (first_zero_omega(mid, gamma_mag, length) > target)
            lo = mid;
        else
            hi = mid;
    }
    return std::sqrt(lo * hi);
}

}  // namespace nlifo
