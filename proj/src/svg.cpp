#include "nlifo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace nlifo {

namespace {

constexpr int kWidth = 840;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 78;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 42;
constexpr int kMarginBottom = 64;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    double span() const { return hi - lo; }
};

Range finite_range(const std::vector<double>& v) {
    Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double x : v) {
        if (!std::isfinite(x)) continue;
        r.lo = std::min(r.lo, x);
        r.hi = std::max(r.hi, x);
    }
    if (!std::isfinite(r.lo)) r = {0.0, 1.0};
    if (r.hi <= r.lo) r.hi = r.lo + 1.0;
    return r;
}

std::vector<double> nice_ticks(const Range& r, int target = 6) {
    const double raw = r.span() / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + 1e-9 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

// compact viridis approximation
void viridis(double t, int& r, int& g, int& b) {
    static const double anchors[9][3] = {
        {0.267, 0.005, 0.329}, {0.283, 0.141, 0.458}, {0.254, 0.265, 0.530},
        {0.207, 0.372, 0.553}, {0.164, 0.471, 0.558}, {0.128, 0.567, 0.551},
        {0.135, 0.659, 0.518}, {0.478, 0.821, 0.318}, {0.993, 0.906, 0.144}};
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * 8.0;
    const int k = std::min(7, static_cast<int>(pos));
    const double f = pos - k;
    r = static_cast<int>(255.0 * (anchors[k][0] + f * (anchors[k + 1][0] - anchors[k][0])));
    g = static_cast<int>(255.0 * (anchors[k][1] + f * (anchors[k + 1][1] - anchors[k][1])));
    b = static_cast<int>(255.0 * (anchors[k][2] + f * (anchors[k + 1][2] - anchors[k][2])));
}

void open_svg(std::ofstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void axes(std::ofstream& out, const Range& xr, const Range& yr, const std::string& x_label,
          const std::string& y_label) {
    const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    out << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
        << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : nice_ticks(xr)) {
        const double px = x0 + (t - xr.lo) / xr.span() * (x1 - x0);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << y0 << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(px) << "\" y=\"" << y0 + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(t)
            << "</text>\n";
    }
    for (double t : nice_ticks(yr)) {
        const double py = y0 - (t - yr.lo) / yr.span() * (y0 - y1);
        out << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << x0
            << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x0 - 8 << "\" y=\"" << fmt(py + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(t)
            << "</text>\n";
    }
    out << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << (y0 + y1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& x, const std::vector<SvgSeries>& series) {
    if (x.empty() || series.empty()) throw std::runtime_error("empty chart data");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    const Range xr = finite_range(x);
    Range yr{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& s : series) {
        const Range r = finite_range(*s.y);
        yr.lo = std::min(yr.lo, r.lo);
        yr.hi = std::max(yr.hi, r.hi);
    }
    if (!std::isfinite(yr.lo) || yr.hi <= yr.lo) yr = {0.0, 1.0};
    const double pad = 0.04 * yr.span();
    yr.lo -= pad;
    yr.hi += pad;

    open_svg(out, title);
    axes(out, xr, yr, x_label, y_label);
    const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    for (const auto& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.4\" points=\"";
        for (std::size_t i = 0; i < x.size() && i < s.y->size(); ++i) {
            const double v = (*s.y)[i];
            if (!std::isfinite(v)) continue;
            const double px = x0 + (x[i] - xr.lo) / xr.span() * (x1 - x0);
            const double py = y0 - (v - yr.lo) / yr.span() * (y0 - y1);
            out << fmt(px) << "," << fmt(py) << " ";
        }
        out << "\"/>\n";
    }
    int ly = y1 + 16;
    for (const auto& s : series) {
        out << "<line x1=\"" << x1 - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << x1 - 126
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << x1 - 120 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
        ly += 16;
    }
    out << "</svg>\n";
}

void write_heatmap(const std::string& path, const std::string& title,
                   const std::string& x_label, const std::string& y_label,
                   const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& values) {
    if (x.empty() || y.empty() || values.size() != x.size() * y.size())
        throw std::runtime_error("heatmap shape mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    // the CSV keeps full resolution; the plot is a preview, so pool the
    // surface down to a bounded raster to keep the file size sane
    constexpr std::size_t kMaxCols = 192, kMaxRows = 128;
    std::vector<double> px_axis, py_axis, pooled;
    const std::vector<double>* use_x = &x;
    const std::vector<double>* use_y = &y;
    const std::vector<double>* use_v = &values;
    if (x.size() > kMaxCols || y.size() > kMaxRows) {
        const std::size_t nc = std::min(kMaxCols, x.size());
        const std::size_t nr = std::min(kMaxRows, y.size());
        px_axis.resize(nc);
        py_axis.resize(nr);
        pooled.assign(nc * nr, 0.0);
        auto bucket = [](std::size_t i, std::size_t n, std::size_t buckets) {
            return std::min(buckets - 1, i * buckets / n);
        };
        std::vector<double> counts(nc * nr, 0.0), xw(nc, 0.0), yw(nr, 0.0), xs(nc, 0.0),
            ys(nr, 0.0);
        for (std::size_t c = 0; c < x.size(); ++c) {
            const std::size_t b = bucket(c, x.size(), nc);
            xs[b] += x[c];
            xw[b] += 1.0;
        }
        for (std::size_t r = 0; r < y.size(); ++r) {
            const std::size_t b = bucket(r, y.size(), nr);
            ys[b] += y[r];
            yw[b] += 1.0;
        }
        for (std::size_t b = 0; b < nc; ++b) px_axis[b] = xs[b] / xw[b];
        for (std::size_t b = 0; b < nr; ++b) py_axis[b] = ys[b] / yw[b];
        for (std::size_t r = 0; r < y.size(); ++r) {
            const std::size_t br = bucket(r, y.size(), nr);
            for (std::size_t c = 0; c < x.size(); ++c) {
                const std::size_t bc = bucket(c, x.size(), nc);
                pooled[br * nc + bc] += values[r * x.size() + c];
                counts[br * nc + bc] += 1.0;
            }
        }
        for (std::size_t i = 0; i < pooled.size(); ++i) pooled[i] /= counts[i];
        use_x = &px_axis;
        use_y = &py_axis;
        use_v = &pooled;
    }

    const Range xr = finite_range(*use_x);
    const Range yr = finite_range(*use_y);
    open_svg(out, title);
    const int x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const int y0 = kHeight - kMarginBottom, y1 = kMarginTop;

    // cells sit at their axis values (axes may run in either direction and
    // need not be uniform); edges are midpoints between neighboring samples
    auto edges = [](const std::vector<double>& v) {
        std::vector<double> e(v.size() + 1);
        for (std::size_t i = 1; i < v.size(); ++i) e[i] = 0.5 * (v[i - 1] + v[i]);
        e.front() = v.size() > 1 ? v[0] - 0.5 * (v[1] - v[0]) : v[0] - 0.5;
        e.back() = v.size() > 1 ? v.back() + 0.5 * (v.back() - v[v.size() - 2]) : v[0] + 0.5;
        return e;
    };
    const std::vector<double> xe = edges(*use_x);
    const std::vector<double> ye = edges(*use_y);
    auto sx = [&](double v) { return x0 + (v - xr.lo) / xr.span() * (x1 - x0); };
    auto sy = [&](double v) { return y0 - (v - yr.lo) / yr.span() * (y0 - y1); };
    for (std::size_t r = 0; r < use_y->size(); ++r) {
        for (std::size_t c = 0; c < use_x->size(); ++c) {
            int cr, cg, cb;
            viridis((*use_v)[r * use_x->size() + c], cr, cg, cb);
            const double px_a = sx(xe[c]), px_b = sx(xe[c + 1]);
            const double py_a = sy(ye[r]), py_b = sy(ye[r + 1]);
            out << "<rect x=\"" << fmt(std::min(px_a, px_b)) << "\" y=\""
                << fmt(std::min(py_a, py_b)) << "\" width=\""
                << fmt(std::abs(px_b - px_a) + 0.3) << "\" height=\""
                << fmt(std::abs(py_b - py_a) + 0.3) << "\" fill=\"rgb(" << cr << "," << cg
                << "," << cb << ")\"/>\n";
        }
    }
    axes(out, xr, yr, x_label, y_label);
    out << "</svg>\n";
}

}  // namespace nlifo
