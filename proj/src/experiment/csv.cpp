#include "endopriv/experiment/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace endopriv::experiment {

namespace {

double parse_double(const std::string& s) {
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::runtime_error("bad number in CSV: '" + s + "'");
    }
    return x;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

std::vector<CsvRow> to_rows(double price, const EquilibriumSet& set) {
    std::vector<CsvRow> rows;
    const std::string source(to_string(set.source));
    for (const auto& p : set.points) {
        rows.push_back({price, p.alpha, p.alpha, std::string(to_string(p.regime)), p.threshold, source});
    }
    for (const auto& iv : set.intervals) {
        rows.push_back({price, iv.lo, iv.hi, "mixed", -1, source});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const CsvRow& a, const CsvRow& b) { return *a.alpha_lo < *b.alpha_lo; });
    if (rows.empty()) rows.push_back({price, std::nullopt, std::nullopt, "empty", -1, source});
    return rows;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.price) << ','
            << (r.alpha_lo ? format_number(*r.alpha_lo) : "") << ','
            << (r.alpha_hi ? format_number(*r.alpha_hi) : "") << ',' << r.regime << ','
            << r.k_star << ',' << r.source << '\n';
    }
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("CSV header does not match the equilibrium schema");
    }
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 6) throw std::runtime_error("CSV row has wrong field count: " + line);
        CsvRow r;
        r.price = parse_double(f[0]);
        if (!f[1].empty()) r.alpha_lo = parse_double(f[1]);
        if (!f[2].empty()) r.alpha_hi = parse_double(f[2]);
        r.regime = f[3];
        r.k_star = static_cast<int>(parse_double(f[4]));
        r.source = f[5];
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace endopriv::experiment
