// nlifo - spectra, interferograms, and verification runs for broadband CW
// twin-beam sensing configurations (SU(1,1), induced coherence, distributed
// loss).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlifo/config.hpp"
#include "nlifo/constants.hpp"
#include "nlifo/csv.hpp"
#include "nlifo/dl.hpp"
#include "nlifo/ic.hpp"
#include "nlifo/interferometry.hpp"
#include "nlifo/kernels.hpp"
#include "nlifo/oracle.hpp"
#include "nlifo/su11.hpp"
#include "nlifo/svg.hpp"
#include "nlifo/toml.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlifo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct Workspace {
    Config cfg;
    SourceParams src;
    DispersionModel model;
    LossProfile loss;
    FrequencyGrid grid;
    fs::path out_dir;
};

Workspace open_workspace(const std::string& config_path, const std::string& out_dir) {
    Workspace w{Config::load(config_path),
                SourceParams{},
                DispersionModel::taylor({}, {}, 0.0),
                LossProfile{},
                FrequencyGrid{},
                fs::path(out_dir)};
    try {
        w.src = w.cfg.make_source();
        w.model = w.cfg.make_model();
        w.loss = w.cfg.make_loss();
        w.grid = w.cfg.make_grid();
    } catch (const std::domain_error& e) {
        // invalid parameter values are a config problem, not a numerical one
        throw ConfigError(config_path + ": " + e.what());
    }
    fs::create_directories(w.out_dir);
    return w;
}

std::vector<double> wavelength_axis(const Workspace& w) {
    std::vector<double> lambda(w.grid.n_bins);
    for (std::size_t k = 0; k < w.grid.n_bins; ++k)
        lambda[k] = two_pi * c_light / (w.src.omega_signal_center() + w.grid.omega(k));
    return lambda;
}

std::vector<double> normalized(const std::vector<double>& v, double* max_out = nullptr) {
    SpectrumCurve c;
    c.value = v;
    c.wavelength.assign(v.size(), 0.0);
    const double mx = *std::max_element(v.begin(), v.end());
    if (max_out) *max_out = mx;
    if (!(mx > 0.0)) return v;
    return normalize(std::move(c)).value;
}

std::vector<double> scaled(const std::vector<double>& v, double s) {
    std::vector<double> out = v;
    for (double& x : out) x *= s;
    return out;
}

void write_meta(const fs::path& path, const json& meta) {
    std::ofstream f(path);
    f << meta.dump(2) << "\n";
}

struct SpectrumBundle {
    std::vector<std::string> columns;       // value column names, no lambda
    std::vector<std::vector<double>> data;  // one vector per column
    json meta;
};

void emit_spectrum(const Workspace& w, const std::string& name, const SpectrumBundle& bundle,
                   std::size_t n_svg_series) {
    const std::vector<double> lambda = wavelength_axis(w);
    std::vector<std::string> header = {"lambda_m"};
    header.insert(header.end(), bundle.columns.begin(), bundle.columns.end());
    CsvWriter csv((w.out_dir / (name + "_spectrum.csv")).string(), header);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        std::vector<double> row = {lambda[k]};
        for (const auto& col : bundle.data) row.push_back(col[k]);
        csv.row(row);
    }
    // plot in nm against the leading normalized columns
    std::vector<double> lambda_nm = scaled(lambda, 1e9);
    static const char* palette[] = {"#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd"};
    std::vector<SvgSeries> series;
    for (std::size_t s = 0; s < n_svg_series && s < bundle.data.size(); ++s)
        series.push_back({bundle.columns[s], palette[s % 5], &bundle.data[s]});
    write_line_chart((w.out_dir / (name + "_spectrum.svg")).string(), name + " spectrum",
                     "signal wavelength (nm)", "normalized intensity", lambda_nm, series);
    json meta = bundle.meta;
    meta["configuration"] = name;
    meta["n_bins"] = w.grid.n_bins;
    meta["kernel_backend"] = kernels::backend_name(kernels::active_backend());
    write_meta(w.out_dir / (name + "_spectrum.meta.json"), meta);
}

int run_spectrum(const std::string& config_path, const std::string& configuration,
                 const std::string& out_dir) {
    Workspace w = open_workspace(config_path, out_dir);
    const std::size_t n = w.grid.n_bins;
    SpectrumBundle b;

    if (configuration == "vacuum") {
        std::vector<double> raw(n), pma(n);
        for (std::size_t k = 0; k < n; ++k) {
            raw[k] = vacuum_moments(w.model, w.src, w.grid.omega(k)).n_s;
            pma[k] = w.model.pma(w.grid.omega(k));
        }
        double mx = 0.0;
        b.columns = {"value", "raw", "pma_rad_per_m"};
        b.data = {normalized(raw, &mx), raw, pma};
        b.meta["normalizing_max"] = mx;
        emit_spectrum(w, configuration, b, 1);
    } else if (configuration == "su11") {
        const double opd = w.cfg.sweep.opd_snapshot;
        const PhaseFn carrier = [&](double x) {
            return opd_phase(opd, x, w.src.omega_idler_center());
        };
        std::vector<double> raw(n), env(n), osc_low(n), osc_gen(n), osc_gen_nopi(n),
            osc_gain(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double wk = w.grid.omega(k);
            raw[k] = su11_intensities(w.model, w.src, w.loss, carrier, w.src.pump_phase, wk).n_s;
            env[k] = vacuum_moments(w.model, w.src, wk).n_s;
            osc_low[k] = osc_lowgain(w.model, w.src, carrier, wk);
            osc_gen[k] = osc_general(w.model, w.src, carrier, w.src.pump_phase, wk, true);
            osc_gen_nopi[k] = osc_general(w.model, w.src, carrier, w.src.pump_phase, wk, false);
            const double psi_a = psi_gain_approx(w.model, w.src, wk, false);
            osc_gain[k] = std::cos(carrier(wk) - w.src.pump_phase + psi_a);
        }
        double mx = 0.0;
        const std::vector<double> value = normalized(raw, &mx);
        const std::vector<double> env_n = normalized(env);
        // overlay curves: envelope times the oscillation mapped onto [0, 1]
        std::vector<double> low_curve(n), gain_curve(n);
        for (std::size_t k = 0; k < n; ++k) {
            low_curve[k] = env_n[k] * 0.5 * (1.0 - osc_low[k]);
            gain_curve[k] = env_n[k] * 0.5 * (1.0 - osc_gain[k]);
        }
        b.columns = {"value",        "envelope_norm", "osc_lowgain_curve",
                     "osc_gain_curve", "raw",         "osc_lowgain",
                     "osc_general",  "osc_general_nopi"};
        b.data = {value, env_n, low_curve, gain_curve, raw, osc_low, osc_gen, osc_gen_nopi};
        b.meta["normalizing_max"] = mx;
        b.meta["opd_snapshot_m"] = opd;
        b.meta["osc_general_sign_convention"] =
            "osc_general keeps the +pi constant; osc_general_nopi drops it (sign flip)";
        emit_spectrum(w, configuration, b, 4);
    } else if (configuration == "ic") {
        PhaseFn cancel = zero_phase();
        if (w.cfg.sweep.ic_cancel == "linear")
            cancel = cancel_linear_deltak(w.model, w.src);
        else if (w.cfg.sweep.ic_cancel == "full")
            cancel = cancel_full_deltak(w.model, w.src);
        const PhaseFn full_cancel = cancel_full_deltak(w.model, w.src);
        std::vector<double> plus_raw(n), minus_raw(n), optimal_raw(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double wk = w.grid.omega(k);
            const BbsArms arms =
                bbs_arms(w.model, w.src, w.loss, cancel, w.src.pump_phase, wk);
            plus_raw[k] = arms.n_plus;
            minus_raw[k] = arms.n_minus;
            optimal_raw[k] =
                bbs_arms(w.model, w.src, w.loss, full_cancel, w.src.pump_phase, wk).n_plus;
        }
        double mx = 0.0;
        b.columns = {"value", "n_minus_norm", "optimal_norm", "raw"};
        b.data = {normalized(plus_raw, &mx), normalized(minus_raw), normalized(optimal_raw),
                  plus_raw};
        b.meta["normalizing_max"] = mx;
        b.meta["ic_cancel"] = w.cfg.sweep.ic_cancel;
        b.meta["arm"] = "plus";
        emit_spectrum(w, configuration, b, 3);
    } else if (configuration == "ic_ancilla") {
        std::vector<double> ancilla(n), idler(n);
        for (std::size_t k = 0; k < n; ++k) {
            const IcIntensities r = ic_intensities(w.model, w.src, w.loss, w.grid.omega(k));
            ancilla[k] = r.n_a;
            idler[k] = r.n_i;
        }
        double mx = 0.0;
        b.columns = {"value", "idler_norm", "raw", "idler_raw"};
        b.data = {normalized(ancilla, &mx), normalized(idler), ancilla, idler};
        b.meta["normalizing_max"] = mx;
        emit_spectrum(w, configuration, b, 2);
    } else if (configuration == "dl") {
        DispersionModel model = w.model;
        if (w.cfg.loss.anomalous_strength != 0.0) {
            LossProfile shift_profile;
            shift_profile.reference_length = w.cfg.length;
            shift_profile.peaks = w.cfg.loss.peaks;
            model = anomalous_dispersion_model(w.model, shift_profile, w.src,
                                               w.cfg.loss.anomalous_strength);
        }
        const DlContributionCurves curves =
            dl_contributions_report(model, w.src, w.loss, w.grid);
        std::vector<double> lossless(n), idler_dl(n), idler_bs(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double wk = w.grid.omega(k);
            lossless[k] = vacuum_moments(model, w.src, wk).n_s;
            const LossCompare cmp = loss_compare(model, w.src, w.loss, wk);
            idler_dl[k] = cmp.dl_idler;
            idler_bs[k] = cmp.bs_idler;
        }
        double mx = 0.0;
        b.columns = {"value", "lossless_norm", "bare", "added_noise", "raw",
                     "idler_dl",  "idler_bs"};
        b.data = {normalized(curves.total, &mx), normalized(lossless), curves.bare,
                  curves.added, curves.total, idler_dl, idler_bs};
        b.meta["normalizing_max"] = mx;
        b.meta["anomalous_strength"] = w.cfg.loss.anomalous_strength;
        emit_spectrum(w, configuration, b, 2);
    } else if (configuration == "dl_anomalous") {
        // pure anomalous dispersion: absorption off, idler wavevector shifted
        const double strength =
            w.cfg.loss.anomalous_strength != 0.0 ? w.cfg.loss.anomalous_strength : 0.1;
        LossProfile shift_profile;
        shift_profile.reference_length = w.cfg.length;
        shift_profile.peaks = w.cfg.loss.peaks;
        const DispersionModel anom =
            anomalous_dispersion_model(w.model, shift_profile, w.src, strength);
        LossProfile no_loss;
        no_loss.reference_length = w.cfg.length;
        std::vector<double> signal(n), idler(n), idler_lambda(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double wk = w.grid.omega(k);
            signal[k] = dl_signal(anom, w.src, no_loss, wk).total();
            idler[k] = dl_idler(anom, w.src, no_loss, wk);
            idler_lambda[k] = two_pi * c_light / (w.src.omega_idler_center() - wk);
        }
        double mx = 0.0;
        b.columns = {"value", "idler_norm", "raw", "idler_lambda_m"};
        b.data = {normalized(signal, &mx), normalized(idler), signal, idler_lambda};
        b.meta["normalizing_max"] = mx;
        b.meta["anomalous_strength"] = strength;
        emit_spectrum(w, configuration, b, 2);
    } else {
        std::cerr << "unknown configuration '" << configuration
                  << "'; valid: vacuum, su11, ic, ic_ancilla, dl, dl_anomalous\n";
        return kExitUsage;
    }
    return kExitOk;
}

int run_interferogram(const std::string& config_path, const std::string& configuration,
                      const std::string& out_dir) {
    Workspace w = open_workspace(config_path, out_dir);
    if (w.cfg.sweep.opd_points < 2) {
        std::cerr << "need >=2 OPD points for visibility\n";
        return kExitUsage;
    }
    const OpdRange range{w.cfg.sweep.opd_start, w.cfg.sweep.opd_stop, w.cfg.sweep.opd_points};

    FringeTerms terms;
    InterferogramKind kind;
    if (configuration == "su11") {
        kind = InterferogramKind::su11;
        terms = su11_fringe_terms(w.model, w.src, w.loss, w.grid, w.src.pump_phase);
    } else if (configuration == "ic_bbs") {
        kind = InterferogramKind::ic_bbs;
        PhaseFn cancel = zero_phase();
        if (w.cfg.sweep.ic_cancel == "linear")
            cancel = cancel_linear_deltak(w.model, w.src);
        else if (w.cfg.sweep.ic_cancel == "full")
            cancel = cancel_full_deltak(w.model, w.src);
        terms = ic_bbs_fringe_terms(w.model, w.src, w.loss, w.grid, w.src.pump_phase, cancel);
    } else if (configuration == "dl_su11") {
        kind = InterferogramKind::dl_su11;
        terms = dl_su11_fringe_terms(w.model, w.src, w.loss, w.grid, w.src.pump_phase);
    } else {
        std::cerr << "unknown configuration '" << configuration
                  << "'; valid: su11, ic_bbs, dl_su11\n";
        return kExitUsage;
    }

    const Interferogram ifg =
        sweep_opd(terms, kind, range, w.cfg.sweep.per_row_normalization);

    const std::string base = (w.out_dir / (configuration + "_interferogram")).string();
    {
        CsvWriter csv(base + ".csv", {"opd_m", "lambda_m", "intensity"});
        for (std::size_t r = 0; r < ifg.opd_axis.size(); ++r)
            for (std::size_t k = 0; k < ifg.wavelength_axis.size(); ++k)
                csv.row({ifg.opd_axis[r], ifg.wavelength_axis[k], ifg.at(r, k)});
    }
    {
        const std::vector<double> lambda_nm = scaled(ifg.wavelength_axis, 1e9);
        const std::vector<double> opd_mm = scaled(ifg.opd_axis, 1e3);
        write_heatmap(base + ".svg", configuration + " interferogram",
                      "signal wavelength (nm)", "idler OPD (mm)", lambda_nm, opd_mm,
                      ifg.values);
    }

    json meta;
    meta["configuration"] = configuration;
    meta["normalizing_max"] = ifg.norm_max;
    meta["per_row_normalization"] = ifg.per_row;
    meta["opd_points"] = ifg.opd_axis.size();
    meta["kernel_backend"] = kernels::backend_name(kernels::active_backend());

    if (!ifg.per_row) {
        const VisibilityTrace trace = visibility_numeric(ifg);
        CsvWriter vcsv((w.out_dir / (configuration + "_visibility.csv")).string(),
                       {"lambda_m", "visibility"});
        for (std::size_t k = 0; k < trace.wavelength.size(); ++k)
            vcsv.row({trace.wavelength[k], trace.v[k]});
        const std::vector<double> lambda_nm = scaled(trace.wavelength, 1e9);
        write_line_chart((w.out_dir / (configuration + "_visibility.svg")).string(),
                         configuration + " visibility", "signal wavelength (nm)", "visibility",
                         lambda_nm, {{"visibility", "#1f77b4", &trace.v}});
        meta["undefined_visibility_bins"] = trace.undefined_bins;
    }
    write_meta(w.out_dir / (configuration + "_interferogram.meta.json"), meta);
    return kExitOk;
}

int run_verify(std::uint64_t seed, std::size_t draws, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const VerifyReport report = verify_identity_suite(seed, draws);
    write_report_text(std::cout, report);
    {
        std::ofstream txt(fs::path(out_dir) / "verify_report.txt");
        write_report_text(txt, report);
    }
    write_report_csv((fs::path(out_dir) / "verify_report.csv").string(), report);
    return report.all_pass() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"broadband CW twin-beam sensing simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", configuration;
    std::uint64_t seed = 42;
    std::size_t draws = 256;

    CLI::App* spectrum = app.add_subcommand("spectrum", "frequency-resolved intensity curves");
    spectrum->add_option("--config", config_path, "TOML config")->required();
    spectrum->add_option("--out", out_dir, "output directory");
    spectrum
        ->add_option("--configuration", configuration,
                     "vacuum | su11 | ic | ic_ancilla | dl | dl_anomalous")
        ->required();

    CLI::App* interferogram =
        app.add_subcommand("interferogram", "OPD sweeps, heatmaps, visibility traces");
    interferogram->add_option("--config", config_path, "TOML config")->required();
    interferogram->add_option("--out", out_dir, "output directory");
    interferogram
        ->add_option("--configuration", configuration, "su11 | ic_bbs | dl_su11")
        ->required();

    CLI::App* verify = app.add_subcommand("verify", "randomized identity battery");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--draws", draws, "number of random parameter draws");
    verify->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help / error text
        return e.get_name() == "CallForHelp" ? kExitOk : kExitUsage;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(config_path, configuration, out_dir);
        if (interferogram->parsed())
            return run_interferogram(config_path, configuration, out_dir);
        return run_verify(seed, draws, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const toml::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
