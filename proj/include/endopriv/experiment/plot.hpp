#pragma once

#include <string>
#include <vector>

#include "endopriv/experiment/csv.hpp"

namespace endopriv::experiment {

/// Alpha-versus-price scatter. Partial points are red, full points blue and
/// mixed intervals drawn as vertical bands. Empty rows draw nothing.
std::string render_svg(const std::vector<CsvRow>& rows);

}  // namespace endopriv::experiment
