#include "nlifo/config.hpp"

#include <cmath>
#include <fstream>

#include "nlifo/toml.hpp"

namespace nlifo {

Config Config::load(const std::string& path) {
    toml::Document doc;
    try {
        doc = toml::parse_file(path);
    } catch (const toml::ParseError& e) {
        throw ConfigError(e.what());
    }
    try {
        Config c;
        c.lambda_pump = doc.number("source", "lambda_pump_m");
        c.lambda_idler_center = doc.number("source", "lambda_idler_center_m");
        c.length = doc.number("source", "length_m");
        c.poling_period = doc.number_or("source", "poling_period_m", c.poling_period);

        c.dispersion.type = doc.text("dispersion", "type", "taylor");
        if (c.dispersion.type == "taylor") {
            c.dispersion.signal.inv_group_velocity =
                doc.number("dispersion", "signal_inv_group_velocity_s_per_m");
            c.dispersion.signal.gvd = doc.number("dispersion", "signal_gvd_s2_per_m");
            c.dispersion.signal.third_order =
                doc.number("dispersion", "signal_third_order_s3_per_m");
            c.dispersion.idler.inv_group_velocity =
                doc.number("dispersion", "idler_inv_group_velocity_s_per_m");
            c.dispersion.idler.gvd = doc.number("dispersion", "idler_gvd_s2_per_m");
            c.dispersion.idler.third_order =
                doc.number("dispersion", "idler_third_order_s3_per_m");
        } else if (c.dispersion.type == "table") {
            c.dispersion.table_path = doc.text("dispersion", "table_path");
            if (c.dispersion.table_path.empty())
                throw ConfigError(path + ": dispersion type \"table\" needs table_path");
        } else {
            throw ConfigError(path + ": dispersion type must be \"taylor\" or \"table\"");
        }
        c.dispersion.pma_offset = doc.number_or("dispersion", "pma_offset_rad_per_m", 0.0);

        c.loss.absorption = doc.boolean("loss", "absorption", true);
        c.loss.anomalous_strength = doc.number_or("loss", "anomalous_strength", 0.0);
        if (doc.has("loss", "peak_center_wavelength_m")) {
            const auto centers = doc.numbers("loss", "peak_center_wavelength_m");
            const auto trans = doc.numbers("loss", "peak_transmission");
            const auto sigmas = doc.numbers("loss", "peak_sigma_lambda_m");
            if (centers.size() != trans.size() || centers.size() != sigmas.size())
                throw ConfigError(path + ": loss peak arrays differ in length");
            for (std::size_t i = 0; i < centers.size(); ++i)
                c.loss.peaks.push_back({centers[i], trans[i], sigmas[i]});
        }

        c.gain.n_peak = doc.number("gain", "n_peak");
        c.gain.pump_phase = doc.number_or("gain", "pump_phase_rad", 0.0);

        c.sweep.n_bins = static_cast<std::size_t>(doc.number_or("sweep", "n_bins", 2048));
        c.sweep.omega_half_span =
            doc.number_or("sweep", "omega_half_span_rad_per_s", 9.0e13);
        c.sweep.opd_start = doc.number_or("sweep", "opd_start_m", -1.0e-5);
        c.sweep.opd_stop = doc.number_or("sweep", "opd_stop_m", -5.0e-5);
        c.sweep.opd_points =
            static_cast<std::size_t>(doc.number_or("sweep", "opd_points", 200));
        c.sweep.opd_snapshot = doc.number_or("sweep", "opd_snapshot_m", -1.0e-4);
        c.sweep.ic_cancel = doc.text("sweep", "ic_cancel", "linear");
        c.sweep.per_row_normalization = doc.boolean("sweep", "per_row_normalization", false);
        if (c.sweep.ic_cancel != "none" && c.sweep.ic_cancel != "linear" &&
            c.sweep.ic_cancel != "full")
            throw ConfigError(path + ": ic_cancel must be none, linear, or full");
        return c;
    } catch (const toml::ParseError& e) {
        throw ConfigError(std::string(e.what()) + " (in " + path + ")");
    }
}

std::string Config::dump() const {
    toml::Document doc;
    doc.set("source", "lambda_pump_m", lambda_pump);
    doc.set("source", "lambda_idler_center_m", lambda_idler_center);
    doc.set("source", "length_m", length);
    doc.set("source", "poling_period_m", poling_period);

    doc.set("dispersion", "type", dispersion.type);
    if (dispersion.type == "taylor") {
        doc.set("dispersion", "signal_inv_group_velocity_s_per_m",
                dispersion.signal.inv_group_velocity);
        doc.set("dispersion", "signal_gvd_s2_per_m", dispersion.signal.gvd);
        doc.set("dispersion", "signal_third_order_s3_per_m", dispersion.signal.third_order);
        doc.set("dispersion", "idler_inv_group_velocity_s_per_m",
                dispersion.idler.inv_group_velocity);
        doc.set("dispersion", "idler_gvd_s2_per_m", dispersion.idler.gvd);
        doc.set("dispersion", "idler_third_order_s3_per_m", dispersion.idler.third_order);
    } else {
        doc.set("dispersion", "table_path", dispersion.table_path);
    }
    doc.set("dispersion", "pma_offset_rad_per_m", dispersion.pma_offset);

    doc.set("loss", "absorption", loss.absorption);
    doc.set("loss", "anomalous_strength", loss.anomalous_strength);
    if (!loss.peaks.empty()) {
        std::vector<double> centers, trans, sigmas;
        for (const auto& p : loss.peaks) {
            centers.push_back(p.center_wavelength);
            trans.push_back(p.transmission);
            sigmas.push_back(p.sigma_lambda);
        }
        doc.set("loss", "peak_center_wavelength_m", centers);
        doc.set("loss", "peak_transmission", trans);
        doc.set("loss", "peak_sigma_lambda_m", sigmas);
    }

    doc.set("gain", "n_peak", gain.n_peak);
    doc.set("gain", "pump_phase_rad", gain.pump_phase);

    doc.set("sweep", "n_bins", static_cast<double>(sweep.n_bins));
    doc.set("sweep", "omega_half_span_rad_per_s", sweep.omega_half_span);
    doc.set("sweep", "opd_start_m", sweep.opd_start);
    doc.set("sweep", "opd_stop_m", sweep.opd_stop);
    doc.set("sweep", "opd_points", static_cast<double>(sweep.opd_points));
    doc.set("sweep", "opd_snapshot_m", sweep.opd_snapshot);
    doc.set("sweep", "ic_cancel", sweep.ic_cancel);
    doc.set("sweep", "per_row_normalization", sweep.per_row_normalization);
    return doc.dump();
}

void Config::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config: " + path);
    out << dump();
}

SourceParams Config::make_source() const {
    return SourceParams::make(lambda_pump, lambda_idler_center, length, poling_period,
                              calibrate_gamma(gain.n_peak, length), gain.pump_phase);
}

DispersionModel Config::make_model() const {
    if (dispersion.type == "taylor")
        return DispersionModel::taylor(dispersion.signal, dispersion.idler,
                                       dispersion.pma_offset);
    auto tables = load_dispersion_table(dispersion.table_path);
    return DispersionModel::tabulated(std::move(tables.at(Mode::signal)),
                                      std::move(tables.at(Mode::idler)),
                                      dispersion.pma_offset);
}

LossProfile Config::make_loss() const {
    LossProfile p;
    p.reference_length = length;
    if (loss.absorption) p.peaks = loss.peaks;
    p.validate();
    return p;
}

FrequencyGrid Config::make_grid() const {
    return FrequencyGrid::symmetric(sweep.omega_half_span, sweep.n_bins);
}

namespace {

// Engineered defaults: matched group velocities, opposite group-velocity
// dispersions, and a third-order term calibrated so the low-gain
// amplification region spans ~23 THz.
constexpr double kInvGroupVelocity = 7.3e-9;      // s/m
constexpr double kGvd = 1.0e-24;                  // s^2/m
constexpr double kThirdOrderHalf = 1.2516267823111265e-39;  // s^3/m
// residual quasi-phase-matching offset between the two quoted poling periods
constexpr double kSkewedPmaOffset = -65.633446997496785;  // rad/m

Config base_preset() {
    Config c;
    c.lambda_pump = 644e-9;
    c.lambda_idler_center = 2.8e-6;
    c.length = 0.04;
    c.poling_period = 6.1879e-6;
    c.dispersion.type = "taylor";
    c.dispersion.signal = {kInvGroupVelocity, kGvd, -kThirdOrderHalf};
    c.dispersion.idler = {kInvGroupVelocity, -kGvd, kThirdOrderHalf};
    c.dispersion.pma_offset = 0.0;
    c.loss.absorption = true;
    c.loss.anomalous_strength = 0.0;
    c.loss.peaks = {{2.75e-6, 0.01, 20e-9}, {2.85e-6, 0.30, 10e-9}};
    c.gain.n_peak = 0.04;
    c.gain.pump_phase = 0.0;
    return c;
}

}  // namespace

Config preset_flat_low_gain() { return base_preset(); }

Config preset_flat_high_gain() {
    Config c = base_preset();
    c.gain.n_peak = 14.0;
    return c;
}

Config preset_skewed_low_gain() {
    Config c = base_preset();
    c.poling_period = 6.1883e-6;
    c.dispersion.pma_offset = kSkewedPmaOffset;
    return c;
}

Config preset_skewed_high_gain() {
    Config c = preset_skewed_low_gain();
    c.gain.n_peak = 14.0;
    return c;
}

}  // namespace nlifo
