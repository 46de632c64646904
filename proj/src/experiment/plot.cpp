#include "endopriv/experiment/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace endopriv::experiment {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 20;
constexpr double kBottom = 50;

}  // namespace

std::string render_svg(const std::vector<CsvRow>& rows) {
    double p_min = 0.0;
    double p_max = 1.0;
    if (!rows.empty()) {
        const auto [lo, hi] = std::minmax_element(
            rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.price < b.price; });
        p_min = lo->price;
        p_max = hi->price;
    }
    if (p_max <= p_min) {
        p_min -= 0.5;
        p_max += 0.5;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x = [&](double p) { return kLeft + (p - p_min) / (p_max - p_min) * plot_w; };
    auto y = [&](double a) { return kTop + (1.0 - a) * plot_h; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double a = i / 4.0;
        const double p = p_min + (p_max - p_min) * i / 4.0;
        s << "<text x=\"" << kLeft - 6 << "\" y=\"" << y(a) + 4 << "\" text-anchor=\"end\">"
          << format_number(a) << "</text>\n";
        s << "<text x=\"" << x(p) << "\" y=\"" << kTop + plot_h + 16
          << "\" text-anchor=\"middle\">" << format_number(p) << "</text>\n";
    }
    s << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">price P</text>\n";
    s << "<text x=\"15\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << kTop + plot_h / 2 << ")\">participation alpha</text>\n";

    for (const auto& r : rows) {
        if (!r.alpha_lo || !r.alpha_hi) continue;
        if (r.regime == "mixed") {
            s << "<line x1=\"" << x(r.price) << "\" y1=\"" << y(*r.alpha_lo) << "\" x2=\"" << x(r.price)
              << "\" y2=\"" << y(*r.alpha_hi)
              << "\" stroke=\"green\" stroke-width=\"3\" stroke-opacity=\"0.6\"/>\n";
        } else {
            s << "<circle cx=\"" << x(r.price) << "\" cy=\"" << y(*r.alpha_lo) << "\" r=\"2.5\" fill=\""
              << (r.regime == "full" ? "blue" : "red") << "\"/>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace endopriv::experiment
