// End-to-end checks of the nlifo binary: spawns the real executable against
// the shipped presets and inspects files and exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "nlifo/config.hpp"

namespace fs = std::filesystem;
using namespace nlifo;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;  // combined stdout + stderr
};

RunResult run_cli(const std::string& args) {
    const std::string out_file = "cli_run_output.txt";
    const std::string cmd =
        std::string(NLIFO_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream f(out_file);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    fs::remove(out_file);
    return r;
}

std::string preset(const std::string& name) {
    return std::string(NLIFO_PRESET_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::path("cli_tmp") / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("shipped presets parse to the built-in parameter sets") {
    CHECK(Config::load(preset("flat_low_gain.toml")) == preset_flat_low_gain());
    CHECK(Config::load(preset("flat_high_gain.toml")) == preset_flat_high_gain());
    CHECK(Config::load(preset("skewed_low_gain.toml")) == preset_skewed_low_gain());
    CHECK(Config::load(preset("skewed_high_gain.toml")) == preset_skewed_high_gain());
}

TEST_CASE("spectrum subcommand writes csv, svg, and metadata") {
    TempDir tmp("spectrum");
    const RunResult r = run_cli("spectrum --config " + preset("flat_low_gain.toml") +
                                " --configuration vacuum --out " + tmp.path.string());
    CHECK(r.exit_code == 0);
    const fs::path csv = tmp.path / "vacuum_spectrum.csv";
    REQUIRE(fs::exists(csv));
    CHECK(fs::exists(tmp.path / "vacuum_spectrum.svg"));
    CHECK(fs::exists(tmp.path / "vacuum_spectrum.meta.json"));
    std::ifstream f(csv);
    std::string header;
    std::getline(f, header);
    CHECK(header == "lambda_m,value,raw,pma_rad_per_m");
    // normalized column peaks at exactly 1
    double best = 0.0;
    std::string line;
    while (std::getline(f, line)) {
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        best = std::max(best, std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    CHECK(best == 1.0);
}

TEST_CASE("every spectrum configuration runs on every preset family") {
    TempDir tmp("spectrum_all");
    for (const std::string cfg :
         {"vacuum", "su11", "ic", "ic_ancilla", "dl", "dl_anomalous"}) {
        const RunResult r = run_cli("spectrum --config " + preset("skewed_low_gain.toml") +
                                    " --configuration " + cfg + " --out " +
                                    tmp.path.string());
        INFO(cfg, ": ", r.output);
        CHECK(r.exit_code == 0);
        CHECK(fs::exists(tmp.path / (cfg + "_spectrum.csv")));
    }
}

TEST_CASE("unknown configuration exits 2 and names the valid ones") {
    TempDir tmp("badcfg");
    const RunResult r = run_cli("spectrum --config " + preset("flat_low_gain.toml") +
                                " --configuration bogus --out " + tmp.path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("vacuum") != std::string::npos);
    CHECK(r.output.find("dl_anomalous") != std::string::npos);
}

TEST_CASE("missing or malformed configs exit 2 with diagnostics") {
    TempDir tmp("badfile");
    const RunResult missing = run_cli("spectrum --config no_such.toml --configuration vacuum");
    CHECK(missing.exit_code == 2);

    const fs::path bad = tmp.path / "broken.toml";
    {
        std::ofstream f(bad);
        f << "[source]\nlambda_pump_m = oops\n";
    }
    const RunResult r =
        run_cli("spectrum --config " + bad.string() + " --configuration vacuum");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("broken.toml:2") != std::string::npos);
}

TEST_CASE("interferogram subcommand with visibility") {
    TempDir tmp("ifg");
    // small grid keeps the run quick
    Config c = preset_flat_low_gain();
    c.sweep.n_bins = 96;
    c.sweep.opd_points = 64;
    const fs::path cfg_path = tmp.path / "small.toml";
    c.save(cfg_path.string());
    const RunResult r = run_cli("interferogram --config " + cfg_path.string() +
                                " --configuration su11 --out " + tmp.path.string());
    INFO(r.output);
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(tmp.path / "su11_interferogram.csv"));
    CHECK(fs::exists(tmp.path / "su11_interferogram.svg"));
    CHECK(fs::exists(tmp.path / "su11_visibility.csv"));
    CHECK(fs::exists(tmp.path / "su11_visibility.svg"));
    std::ifstream f(tmp.path / "su11_interferogram.csv");
    std::string header;
    std::getline(f, header);
    CHECK(header == "opd_m,lambda_m,intensity");
}

TEST_CASE("invalid physical values in a config exit 2") {
    TempDir tmp("badval");
    Config c = preset_flat_low_gain();
    c.loss.peaks[0].transmission = 1.5;  // out of (0, 1]
    const fs::path cfg_path = tmp.path / "badval.toml";
    c.save(cfg_path.string());
    const RunResult r = run_cli("spectrum --config " + cfg_path.string() +
                                " --configuration vacuum --out " + tmp.path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("transmission") != std::string::npos);
}

TEST_CASE("interferogram refuses a single OPD point") {
    TempDir tmp("ifg1");
    Config c = preset_flat_low_gain();
    c.sweep.n_bins = 16;
    c.sweep.opd_points = 1;
    const fs::path cfg_path = tmp.path / "one.toml";
    c.save(cfg_path.string());
    const RunResult r = run_cli("interferogram --config " + cfg_path.string() +
                                " --configuration su11 --out " + tmp.path.string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find(">=2 OPD points") != std::string::npos);
}

TEST_CASE("csv output is byte-identical across runs") {
    TempDir a("det_a"), b("det_b");
    Config c = preset_skewed_low_gain();
    c.sweep.n_bins = 128;
    const fs::path cfg_path = a.path / "cfg.toml";
    c.save(cfg_path.string());
    CHECK(run_cli("spectrum --config " + cfg_path.string() + " --configuration dl --out " +
                  a.path.string())
              .exit_code == 0);
    CHECK(run_cli("spectrum --config " + cfg_path.string() + " --configuration dl --out " +
                  b.path.string())
              .exit_code == 0);
    CHECK(slurp(a.path / "dl_spectrum.csv") == slurp(b.path / "dl_spectrum.csv"));
}

TEST_CASE("tabulated dispersion runs end to end") {
    TempDir tmp("table");
    Config c = preset_flat_low_gain();
    c.dispersion.type = "table";
    c.dispersion.table_path = preset("example_dispersion_table.csv");
    c.sweep.n_bins = 96;
    const fs::path cfg_path = tmp.path / "table.toml";
    c.save(cfg_path.string());
    const RunResult r = run_cli("spectrum --config " + cfg_path.string() +
                                " --configuration vacuum --out " + tmp.path.string());
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(tmp.path / "vacuum_spectrum.csv"));
}

TEST_CASE("verify subcommand reports and exits 0") {
    TempDir tmp("verify");
    const RunResult r =
        run_cli("verify --seed 42 --draws 48 --out " + tmp.path.string());
    INFO(r.output);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("PASS") != std::string::npos);
    CHECK(fs::exists(tmp.path / "verify_report.txt"));
    CHECK(fs::exists(tmp.path / "verify_report.csv"));
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("spectrum").exit_code == 2);            // missing required options
    CHECK(run_cli("no_such_subcommand").exit_code == 2);  // unknown subcommand
}
