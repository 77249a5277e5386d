#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace uavisac {

/// Deterministic number formatting for CSV cells: plain decimal inside
/// [1e-3, 1e6), scientific outside, 12 significant digits, trailing zeros
/// trimmed.
std::string csv_number(double value);

/// Comma-separated writer; the first line is a `# key=value` comment
/// recording provenance, the second names the columns.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& provenance,
              const std::vector<std::string>& columns);

    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t column_count_;
};

}  // namespace uavisac
