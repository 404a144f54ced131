#include "nlifo/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace nlifo {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_cols_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_cols_)
        throw std::runtime_error("CSV row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format_g17(values[i]);
    out_ << "\n";
}

}  // namespace nlifo
