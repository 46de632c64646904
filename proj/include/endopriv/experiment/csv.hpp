#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "endopriv/equilibrium.hpp"

namespace endopriv::experiment {

inline constexpr std::string_view kCsvHeader = "price,alpha_lo,alpha_hi,regime,k_star,source";

/// One equilibrium object at one price. Empty rows have no alphas.
struct CsvRow {
    double price = 0.0;
    std::optional<double> alpha_lo;
    std::optional<double> alpha_hi;
    std::string regime;  ///< partial, full, mixed or empty
    int k_star = -1;     ///< -1 for intervals and empty rows
    std::string source;

    bool operator==(const CsvRow&) const = default;
};

/// Rows for one price, ordered by alpha. An empty set yields a single
/// "empty" row tagged with the given source.
std::vector<CsvRow> to_rows(double price, const EquilibriumSet& set);

/// 12 significant digits, '.' decimal separator.
std::string format_number(double x);

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);

/// Inverse of write_csv. Throws std::runtime_error on a header or field
/// mismatch.
std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace endopriv::experiment
