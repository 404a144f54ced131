#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nlifo {

std::string format_g17(double v);

// Header-plus-rows CSV writer: UTF-8, '.' decimal separator, 17 significant
// digits, LF line endings. Output is byte-deterministic for identical data.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

  private:
    std::ofstream out_;
    std::size_t n_cols_;
};

}  // namespace nlifo
