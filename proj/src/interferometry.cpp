#include "nlifo/interferometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlifo/kernels.hpp"
#include "nlifo/parallel.hpp"

namespace nlifo {

void FringeTerms::validate() const {
    const std::size_t n = wavelength.size();
    if (n == 0) throw std::domain_error("fringe terms are empty");
    if (alpha.size() != n || amp.size() != n || slope.size() != n || phase0.size() != n)
        throw std::domain_error("fringe term arrays disagree in length");
    for (std::size_t i = 1; i < n; ++i)
        if ((wavelength[i] - wavelength[i - 1]) * (wavelength[1] - wavelength[0]) <= 0.0)
            throw std::domain_error("wavelength axis must be strictly monotone");
}

std::string interferogram_kind_name(InterferogramKind k) {
    switch (k) {
        case InterferogramKind::su11: return "su11";
        case InterferogramKind::ic_bbs: return "ic_bbs";
        case InterferogramKind::dl_su11: return "dl_su11";
    }
    return "unknown";
}

double OpdRange::opd(std::size_t k) const {
    if (n == 1) return start;
    return start + (stop - start) * static_cast<double>(k) / static_cast<double>(n - 1);
}

Interferogram sweep_opd(const FringeTerms& terms, InterferogramKind kind, const OpdRange& range,
                        bool per_row_normalization) {
    terms.validate();
    if (range.n < 1) throw std::domain_error("OPD sweep needs at least one point");
    const std::size_t nw = terms.size();

    Interferogram ifg;
    ifg.kind = kind;
    ifg.wavelength_axis = terms.wavelength;
    ifg.opd_axis.resize(range.n);
    for (std::size_t r = 0; r < range.n; ++r) ifg.opd_axis[r] = range.opd(r);
    ifg.values.assign(range.n * nw, 0.0);

    parallel_for(range.n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
            kernels::fringe_row(ifg.values.data() + r * nw, terms.alpha.data(), terms.amp.data(),
                                terms.slope.data(), terms.phase0.data(), ifg.opd_axis[r], nw);
    });

    if (per_row_normalization) {
        ifg.per_row = true;
        ifg.norm_max = kernels::max_value(ifg.values.data(), ifg.values.size());
        for (std::size_t r = 0; r < range.n; ++r) {
            double* row = ifg.values.data() + r * nw;
            const double mx = kernels::max_value(row, nw);
            if (mx > 0.0) kernels::divide(row, nw, mx);
        }
    } else {
        ifg.norm_max = kernels::max_value(ifg.values.data(), ifg.values.size());
        if (ifg.norm_max > 0.0)
            kernels::divide(ifg.values.data(), ifg.values.size(), ifg.norm_max);
    }
    return ifg;
}

VisibilityTrace visibility_numeric(const Interferogram& ifg) {
    if (ifg.opd_axis.size() < 2)
        throw std::domain_error("need >=2 OPD points for visibility");
    if (ifg.per_row)
        throw std::domain_error("visibility requires a globally normalized interferogram");
    const std::size_t nw = ifg.wavelength_axis.size();
    const std::size_t nr = ifg.opd_axis.size();
    std::vector<double> mn(ifg.values.begin(), ifg.values.begin() + nw);
    std::vector<double> mx = mn;
    for (std::size_t r = 1; r < nr; ++r)
        kernels::minmax_update(mn.data(), mx.data(), ifg.values.data() + r * nw, nw);

    VisibilityTrace out;
    out.wavelength = ifg.wavelength_axis;
    out.v.resize(nw);
    for (std::size_t i = 0; i < nw; ++i) {
        const double den = mx[i] + mn[i];
        if (den > 0.0) {
            out.v[i] = (mx[i] - mn[i]) / den;
        } else {
            out.v[i] = std::numeric_limits<double>::quiet_NaN();
            ++out.undefined_bins;
        }
    }
    return out;
}

double visibility_analytic(InterferometerKind kind, double n_v, double eta) {
    if (n_v < 0.0) throw std::domain_error("photon number must be >= 0");
    if (eta < 0.0 || eta > 1.0) throw std::domain_error("transmission must be in [0, 1]");
    if (kind == InterferometerKind::su11)
        return 2.0 * std::sqrt(eta) * (n_v + 1.0) / (2.0 + n_v * (1.0 + eta));
    return 2.0 * std::sqrt(eta * (n_v + 1.0)) / (2.0 + eta * n_v);
}

VisibilityLimits visibility_limits(InterferometerKind kind, double eta, double n_v) {
    VisibilityLimits lim;
    lim.low_gain = std::sqrt(eta);
    if (kind == InterferometerKind::su11) {
        lim.high_gain = 2.0 * std::sqrt(eta) / (1.0 + eta);
    } else {
        lim.high_gain = eta * n_v > 0.0 ? std::min(1.0, 2.0 / std::sqrt(eta * n_v)) : 1.0;
    }
    return lim;
}

}  // namespace nlifo
