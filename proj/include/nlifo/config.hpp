#pragma once

#include <stdexcept>
#include <string>

#include "nlifo/dispersion.hpp"

namespace nlifo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepSettings {
    std::size_t n_bins = 2048;
    double omega_half_span = 9.0e13;  // rad/s
    double opd_start = -1.0e-5;       // m
    double opd_stop = -5.0e-5;        // m
    std::size_t opd_points = 200;
    double opd_snapshot = -1.0e-4;    // m, static OPD for spectrum snapshots
    std::string ic_cancel = "linear";  // none | linear | full
    bool per_row_normalization = false;

    bool operator==(const SweepSettings&) const = default;
};

struct GainSettings {
    double n_peak = 0.04;
    double pump_phase = 0.0;

    bool operator==(const GainSettings&) const = default;
};

struct LossSettings {
    bool absorption = true;
    double anomalous_strength = 0.0;
    std::vector<LossPeak> peaks;

    bool operator==(const LossSettings&) const = default;
};

struct DispersionSettings {
    std::string type = "taylor";  // taylor | table
    TaylorMode signal;
    TaylorMode idler;
    double pma_offset = 0.0;
    std::string table_path;

    bool operator==(const DispersionSettings&) const = default;
};

struct Config {
    double lambda_pump = 644e-9;
    double lambda_idler_center = 2.8e-6;
    double length = 0.04;
    double poling_period = 6.1879e-6;
    DispersionSettings dispersion;
    LossSettings loss;
    GainSettings gain;
    SweepSettings sweep;

    static Config load(const std::string& path);
    std::string dump() const;
    void save(const std::string& path) const;

    SourceParams make_source() const;
    DispersionModel make_model() const;
    // absorption off yields an empty-peak profile (kappa = 0, eta = 1)
    LossProfile make_loss() const;
    FrequencyGrid make_grid() const;

    bool operator==(const Config&) const = default;
};

// Shipped parameter sets. flat/skewed pick the quasi-phase-matching offset,
// low/high the calibrated gain.
Config preset_flat_low_gain();
Config preset_flat_high_gain();
Config preset_skewed_low_gain();
Config preset_skewed_high_gain();

}  // namespace nlifo
