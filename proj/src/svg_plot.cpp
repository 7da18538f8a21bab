#include "axicyl/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "axicyl/error.hpp"

namespace axicyl {

namespace {

constexpr double width = 640.0;
constexpr double height = 400.0;
constexpr double left = 80.0;
constexpr double right = 20.0;
constexpr double top = 40.0;
constexpr double bottom = 50.0;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::string render_svg(const LinePlot& p) {
    if (p.x.empty() || p.x.size() != p.y.size()) {
        throw Error(ErrorKind::invalid_argument, "plot needs equally long, non-empty x and y");
    }
    const auto [xmin_it, xmax_it] = std::minmax_element(p.x.begin(), p.x.end());
    double ymin = 0.0;
    double ymax = 0.0;
    bool any = false;
    for (double v : p.y) {
        if (!std::isfinite(v)) continue;
        ymin = any ? std::min(ymin, v) : v;
        ymax = any ? std::max(ymax, v) : v;
        any = true;
    }
    double xmin = *xmin_it;
    double xmax = *xmax_it;
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        const double pad = ymin == 0.0 ? 1.0 : std::abs(ymin) * 0.5;
        ymin -= pad;
        ymax += pad;
    }
    const double pw = width - left - right;
    const double ph = height - top - bottom;
    const auto sx = [&](double v) { return left + (v - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double v) { return top + (ymax - v) / (ymax - ymin) * ph; };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(p.title) << "</text>\n";
    o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    const auto label = [&](double x, double y, const std::string& anchor, const std::string& text) {
        o << "<text x=\"" << coord(x) << "\" y=\"" << coord(y) << "\" text-anchor=\"" << anchor
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(text) << "</text>\n";
    };
    label(left, height - bottom + 16, "start", tick(xmin));
    label(width - right, height - bottom + 16, "end", tick(xmax));
    label(left - 6, top + 4, "end", tick(ymax));
    label(left - 6, height - bottom, "end", tick(ymin));
    label(left + pw / 2, height - 12, "middle", p.x_label);
    o << "<text x=\"16\" y=\"" << coord(top + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"11\" transform=\"rotate(-90 16 " << coord(top + ph / 2) << ")\">" << escape(p.y_label)
      << "</text>\n";
    o << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        if (!std::isfinite(p.y[i])) continue;
        o << (first ? "" : " ") << coord(sx(p.x[i])) << ',' << coord(sy(p.y[i]));
        first = false;
    }
    o << "\"/>\n</svg>\n";
    return o.str();
}

}  // namespace axicyl
