#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nlifo {

// Per-bin fringe coefficients: every interferometric configuration reduces,
// per frequency bin, to  value(opd) = alpha + amp * cos(slope * opd + phase0).
// Rows of an OPD sweep are then pure data-parallel kernel work.
struct FringeTerms {
    std::vector<double> wavelength;  // m, signal side, strictly monotone
    std::vector<double> alpha;
    std::vector<double> amp;
    std::vector<double> slope;   // rad per meter of OPD
    std::vector<double> phase0;  // rad

    std::size_t size() const { return wavelength.size(); }
    void validate() const;
};

enum class InterferogramKind { su11, ic_bbs, dl_su11 };
std::string interferogram_kind_name(InterferogramKind k);

struct OpdRange {
    double start = 0.0;  // m
    double stop = 0.0;   // m
    std::size_t n = 0;

    double opd(std::size_t k) const;
};

struct Interferogram {
    std::vector<double> wavelength_axis;  // m
    std::vector<double> opd_axis;         // m
    std::vector<double> values;           // row-major [opd][wavelength], normalized
    InterferogramKind kind = InterferogramKind::su11;
    double norm_max = 1.0;      // maximum of the raw surface before normalization
    bool per_row = false;       // true when each OPD row was normalized separately

    double at(std::size_t opd_idx, std::size_t wl_idx) const {
        return values[opd_idx * wavelength_axis.size() + wl_idx];
    }
};

// Sweeps the OPD axis; rows are computed in parallel with the batch kernels
// and assembled deterministically. Global normalization by default; per-row
// normalization is for fringe-shape inspection only.
Interferogram sweep_opd(const FringeTerms& terms, InterferogramKind kind, const OpdRange& range,
                        bool per_row_normalization = false);

struct VisibilityTrace {
    std::vector<double> wavelength;  // m
    std::vector<double> v;           // in [0,1]; NaN where max+min == 0
    std::size_t undefined_bins = 0;
};

// (max - min) / (max + min) over the OPD axis, per wavelength bin.
VisibilityTrace visibility_numeric(const Interferogram& ifg);

enum class InterferometerKind { su11, ic };

// Closed-form visibility at one bin given the single-pass photon number and
// the idler transmission.
double visibility_analytic(InterferometerKind kind, double n_v, double eta);

struct VisibilityLimits {
    double low_gain = 0.0;
    double high_gain = 0.0;
};
VisibilityLimits visibility_limits(InterferometerKind kind, double eta, double n_v);

}  // namespace nlifo
