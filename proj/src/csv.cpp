#include "uavisac/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace uavisac {

namespace {

void trim_fraction_zeros(std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) return;
    auto last = s.find_last_not_of('0');
    if (s[last] == '.') --last;
    s.erase(last + 1);
}

}  // namespace

std::string csv_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[48];
    const double mag = std::fabs(value);
    if (value == 0.0 || (mag >= 1e-3 && mag < 1e6)) {
        // 12 significant digits in plain decimal.
        const int exponent = value == 0.0 ? 0 : static_cast<int>(std::floor(std::log10(mag)));
        const int decimals = std::min(14, std::max(0, 11 - exponent));
        std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
        std::string s(buf);
        trim_fraction_zeros(s);
        return s;
    }
    std::snprintf(buf, sizeof buf, "%.11e", value);
    std::string s(buf);
    // Trim zeros in the mantissa but keep the exponent.
    const auto e = s.find('e');
    std::string mantissa = s.substr(0, e);
    trim_fraction_zeros(mantissa);
    return mantissa + s.substr(e);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& provenance,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), column_count_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
    out_ << "# " << provenance << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != column_count_)
        throw std::runtime_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
    out_ << "\n";
}

}  // namespace uavisac
