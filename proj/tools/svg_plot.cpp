#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace flatscan {

namespace {

constexpr double kPanel = 220.0;   // drawable square
constexpr double kMargin = 36.0;   // around each panel
constexpr double kStrip = 18.0;    // essential strip height

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range diagram_range(const PersistenceDiagram& d) {
    Range r;
    r.lo = 0.0;
    r.hi = 1.0;
    bool any = false;
    for (const auto& p : d.points) {
        r.lo = any ? std::min(r.lo, p.first) : p.first;
        double hi_cand = p.first;
        if (p.second != kInfiniteDeath) hi_cand = std::max(hi_cand, p.second);
        r.hi = any ? std::max(r.hi, hi_cand) : hi_cand;
        any = true;
    }
    if (!any) return Range{0.0, 1.0};
    if (r.hi <= r.lo) r.hi = r.lo + 1.0;
    const double pad = 0.08 * (r.hi - r.lo);
    r.lo -= pad;
    r.hi += pad;
    return r;
}

// One diagram panel with top-left corner (ox, oy).
void draw_diagram_panel(std::ostream& out, const PersistenceDiagram& d, double ox, double oy,
                        const std::string& label) {
    const Range r = diagram_range(d);
    const double x0 = ox + kMargin, y_top = oy + kMargin;
    const double plot_top = y_top + kStrip;                 // below essential strip
    const double plot_h = kPanel - kStrip;
    const double y_axis_bottom = y_top + kPanel;
    auto sx = [&](double v) { return x0 + (v - r.lo) / (r.hi - r.lo) * kPanel; };
    auto sy = [&](double v) { return y_axis_bottom - (v - r.lo) / (r.hi - r.lo) * plot_h; };

    out << "<g>\n";
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y_top) << "\" width=\"" << num(kPanel)
        << "\" height=\"" << num(kPanel) << "\" fill=\"white\" stroke=\"black\"/>\n";
    // essential strip separator
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(plot_top) << "\" x2=\""
        << num(x0 + kPanel) << "\" y2=\"" << num(plot_top)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    // diagonal
    out << "<line x1=\"" << num(sx(r.lo)) << "\" y1=\"" << num(sy(r.lo)) << "\" x2=\""
        << num(sx(r.hi)) << "\" y2=\"" << num(sy(r.hi)) << "\" stroke=\"#999\"/>\n";
    out << "<text x=\"" << num(x0) << "\" y=\"" << num(y_top - 6) << "\" font-size=\"11\">"
        << label << "</text>\n";
    for (const auto& p : d.points) {
        const double cx = sx(p.first);
        const double cy = p.second == kInfiniteDeath ? y_top + 0.5 * kStrip : sy(p.second);
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy)
            << "\" r=\"3\" fill=\"#1f57a8\"/>\n";
    }
    out << "</g>\n";
}

void draw_euler_panel(std::ostream& out, const EulerCurve& curve, double ox, double oy,
                      const std::string& label) {
    double xlo = 0.0, xhi = 1.0;
    int ylo = 0, yhi = 1;
    if (!curve.empty()) {
        xlo = curve.front().first;
        xhi = std::max(curve.back().first, xlo + 1e-12);
        ylo = yhi = curve.front().second;
        for (const auto& [x, c] : curve) {
            ylo = std::min(ylo, c);
            yhi = std::max(yhi, c);
        }
        if (ylo == yhi) ++yhi;
        --ylo;
    }
    const double x0 = ox + kMargin, y_top = oy + kMargin;
    auto sx = [&](double v) { return x0 + (v - xlo) / (xhi - xlo) * kPanel; };
    auto sy = [&](double v) {
        return y_top + kPanel - (v - ylo) / (double(yhi) - ylo) * kPanel;
    };
    out << "<g>\n";
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y_top) << "\" width=\"" << num(kPanel)
        << "\" height=\"" << num(kPanel) << "\" fill=\"white\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x0) << "\" y=\"" << num(y_top - 6) << "\" font-size=\"11\">"
        << label << "</text>\n";
    if (!curve.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#a83f1f\" points=\"";
        double prev_y = sy(curve.front().second);
        out << num(sx(xlo)) << ',' << num(prev_y);
        for (const auto& [x, c] : curve) {
            out << ' ' << num(sx(x)) << ',' << num(prev_y);
            prev_y = sy(c);
            out << ' ' << num(sx(x)) << ',' << num(prev_y);
        }
        out << "\"/>\n";
    }
    out << "</g>\n";
}

std::string svg_document(double width, double height, const std::string& body) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n"
        << body << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render_diagram_svg(const PersistenceDiagram& d) {
    std::ostringstream body;
    draw_diagram_panel(body, d, 0.0, 0.0, "degree " + std::to_string(d.degree));
    return svg_document(kPanel + 2 * kMargin, kPanel + 2 * kMargin, body.str());
}

std::string render_result_svg(const DphtResult& r) {
    const std::size_t degrees = r.diagrams.empty() ? 0 : r.diagrams.front().size();
    const std::size_t cols = degrees + (r.euler_curves.empty() ? 0 : 1);
    const std::size_t rows = r.flats.size();
    const double cell = kPanel + 2 * kMargin;
    std::ostringstream body;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < r.diagrams[i].size(); ++k) {
            draw_diagram_panel(body, r.diagrams[i][k], double(k) * cell, double(i) * cell,
                               "flat " + std::to_string(i) + " degree " +
                                   std::to_string(r.diagrams[i][k].degree));
        }
        if (!r.euler_curves.empty()) {
            draw_euler_panel(body, r.euler_curves[i], double(degrees) * cell, double(i) * cell,
                             "flat " + std::to_string(i) + " euler");
        }
    }
    return svg_document(std::max<std::size_t>(cols, 1) * cell, std::max<std::size_t>(rows, 1) * cell,
                        body.str());
}

}  // namespace flatscan
