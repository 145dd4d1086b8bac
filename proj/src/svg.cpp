#include "sorption/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace sorption::svg {

namespace {
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                         "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};
}

void Chart::add(std::string label, std::vector<double> x, std::vector<double> y,
                bool points_only) {
    series.push_back(Series{std::move(label), std::move(x), std::move(y), points_only});
}

std::string Chart::render(int width, int height) const {
    const double ml = 64, mr = 16, mt = 36, mb = 48;
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double yv = log_y ? std::log10(std::max(s.y[i], 1e-300)) : s.y[i];
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, yv);
            ymax = std::max(ymax, yv);
        }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pad = 0.04 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto tx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto ty = [&](double y) {
        const double v = log_y ? std::log10(std::max(y, 1e-300)) : y;
        return height - mb - (v - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "' font-family='sans-serif' font-size='12'>\n";
    o << "<rect width='100%' height='100%' fill='white'/>\n";
    o << "<text x='" << width / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
    // axes
    o << "<line x1='" << ml << "' y1='" << height - mb << "' x2='" << width - mr << "' y2='"
      << height - mb << "' stroke='black'/>\n";
    o << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << height - mb
      << "' stroke='black'/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 5.0;
        const double fy = ymin + (ymax - ymin) * t / 5.0;
        o << "<text x='" << tx(fx) << "' y='" << height - mb + 16
          << "' text-anchor='middle'>" << std::round(fx * 1000) / 1000 << "</text>\n";
        const double ylabel_v = log_y ? std::pow(10.0, fy) : fy;
        o << "<text x='" << ml - 6 << "' y='" << ty(log_y ? std::pow(10.0, fy) : fy) + 4
          << "' text-anchor='end'>";
        std::ostringstream yv;
        yv.precision(3);
        yv << ylabel_v;
        o << yv.str() << "</text>\n";
    }
    o << "<text x='" << (ml + width - mr) / 2 << "' y='" << height - 10
      << "' text-anchor='middle'>" << xlabel << "</text>\n";
    o << "<text x='16' y='" << (mt + height - mb) / 2 << "' text-anchor='middle' transform='rotate(-90 16 "
      << (mt + height - mb) / 2 << ")'>" << ylabel << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& sr = series[s];
        const char* color = kColors[s % 10];
        if (sr.points_only) {
            for (std::size_t i = 0; i < sr.x.size(); ++i)
                o << "<circle cx='" << tx(sr.x[i]) << "' cy='" << ty(sr.y[i])
                  << "' r='3' fill='" << color << "'/>\n";
        } else {
            o << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
            for (std::size_t i = 0; i < sr.x.size(); ++i)
                o << tx(sr.x[i]) << ',' << ty(sr.y[i]) << ' ';
            o << "'/>\n";
        }
        o << "<text x='" << width - mr - 8 << "' y='" << mt + 16 * (s + 1)
          << "' text-anchor='end' fill='" << color << "'>" << sr.label << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void Chart::write(const std::string& path, int width, int height) const {
    std::ofstream out(path, std::ios::binary);
    out << render(width, height);
}

}  // namespace sorption::svg
