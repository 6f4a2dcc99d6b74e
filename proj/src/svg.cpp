// SPDX-License-Identifier: Apache-2.0
#include "frontindex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace frontindex {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Mapper {
    double x0, x1, y0, y1; // data window
    double px = 720.0, py = 720.0, margin = 60.0;

    double X(double x) const { return margin + (x - x0) / (x1 - x0) * px; }
    double Y(double y) const { return margin + py - (y - y0) / (y1 - y0) * py; }
    double width() const { return px + 2 * margin; }
    double height() const { return py + 2 * margin + 40.0; }
};

void svg_header(std::ostringstream& out, const Mapper& m, const std::string& title) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << fmt(m.width()) << "\" height=\"" << fmt(m.height()) << "\" viewBox=\"0 0 "
        << fmt(m.width()) << " " << fmt(m.height()) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << fmt(m.margin) << "\" y=\"" << fmt(m.margin * 0.6)
        << "\" font-family=\"sans-serif\" font-size=\"18\">" << title << "</text>\n";
}

void svg_axes(std::ostringstream& out, const Mapper& m, const std::string& xlabel,
              const std::string& ylabel) {
    out << "<rect x=\"" << fmt(m.margin) << "\" y=\"" << fmt(m.margin) << "\" width=\""
        << fmt(m.px) << "\" height=\"" << fmt(m.py)
        << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    // corner tick labels in chart units
    out << "<text x=\"" << fmt(m.margin) << "\" y=\"" << fmt(m.margin + m.py + 18)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xlabel << " = " << fmt(m.x0)
        << "</text>\n";
    out << "<text x=\"" << fmt(m.margin + m.px - 90) << "\" y=\""
        << fmt(m.margin + m.py + 18) << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << xlabel << " = " << fmt(m.x1) << "</text>\n";
    out << "<text x=\"" << fmt(m.margin * 0.15) << "\" y=\"" << fmt(m.margin + m.py)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << ylabel << " = " << fmt(m.y0)
        << "</text>\n";
    out << "<text x=\"" << fmt(m.margin * 0.15) << "\" y=\"" << fmt(m.margin + 12)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << ylabel << " = " << fmt(m.y1)
        << "</text>\n";
}

} // namespace

std::string svg_strata_plot(const SurfaceDomain& domain,
                            const std::vector<SingularCurve>& curves,
                            const std::vector<SignedA3Point>& a3,
                            const std::string& title) {
    Mapper m{domain.u_min, domain.u_max, domain.v_min, domain.v_max};
    std::ostringstream out;
    svg_header(out, m, title);
    svg_axes(out, m, "u", "v");

    if (domain.kind == DomainKind::SphereChart) {
        // pole-cap band boundaries
        for (double v : {domain.strata_v_min(), domain.strata_v_max()}) {
            out << "<line x1=\"" << fmt(m.X(domain.u_min)) << "\" y1=\"" << fmt(m.Y(v))
                << "\" x2=\"" << fmt(m.X(domain.u_max)) << "\" y2=\"" << fmt(m.Y(v))
                << "\" stroke=\"#bbb\" stroke-dasharray=\"6 4\" stroke-width=\"1\"/>\n";
        }
    }

    // curve segments colored by the sign of lambda_dot (red +, blue -)
    for (const SingularCurve& c : curves) {
        const size_t n = c.points.size();
        const size_t pairs = c.closed ? n : (n > 0 ? n - 1 : 0);
        for (size_t k = 0; k < pairs; ++k) {
            const Vec2 a = c.points[k];
            const Vec2 b = c.points[(k + 1) % n];
            // skip seam-crossing segments instead of drawing wrap-around lines
            if (std::abs(b.u - a.u) > 0.5 * domain.u_range()) continue;
            if (domain.v_periodic && std::abs(b.v - a.v) > 0.5 * domain.v_range()) continue;
            const double ld = 0.5 * (c.lambda_dot[k] + c.lambda_dot[(k + 1) % n]);
            const char* color = ld >= 0.0 ? "#c62828" : "#1565c0";
            out << "<line x1=\"" << fmt(m.X(a.u)) << "\" y1=\"" << fmt(m.Y(a.v)) << "\" x2=\""
                << fmt(m.X(b.u)) << "\" y2=\"" << fmt(m.Y(b.v)) << "\" stroke=\"" << color
                << "\" stroke-width=\"1.6\"/>\n";
        }
    }

    // A3 markers: plus cross for +, circled dot for -
    for (const SignedA3Point& p : a3) {
        const double x = m.X(p.p.u), y = m.Y(p.p.v);
        if (p.sign > 0) {
            out << "<path d=\"M " << fmt(x - 7) << " " << fmt(y) << " H " << fmt(x + 7) << " M "
                << fmt(x) << " " << fmt(y - 7) << " V " << fmt(y + 7)
                << "\" stroke=\"#2e7d32\" stroke-width=\"2.5\" fill=\"none\"/>\n";
        } else {
            out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
                << "\" r=\"6\" stroke=\"#6a1b9a\" stroke-width=\"2.5\" fill=\"none\"/>\n";
            out << "<line x1=\"" << fmt(x - 4) << "\" y1=\"" << fmt(y) << "\" x2=\""
                << fmt(x + 4) << "\" y2=\"" << fmt(y)
                << "\" stroke=\"#6a1b9a\" stroke-width=\"2.5\"/>\n";
        }
    }

    // legend
    const double lx = m.margin + 8, ly = m.margin + m.py + 30;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 26)
        << "\" y2=\"" << fmt(ly) << "\" stroke=\"#c62828\" stroke-width=\"2\"/>"
        << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">singular curve, "
           "lambda_dot &gt; 0</text>\n";
    out << "<line x1=\"" << fmt(lx + 250) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(lx + 276) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"#1565c0\" stroke-width=\"2\"/>"
        << "<text x=\"" << fmt(lx + 282) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">lambda_dot &lt; 0</text>\n";
    out << "<text x=\"" << fmt(lx + 420) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">+ / o : signed A3 points</text>\n";

    out << "</svg>\n";
    return out.str();
}

std::string svg_profile_plot(const std::vector<ProfileCurve>& profiles,
                             const std::string& title) {
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const ProfileCurve& c : profiles)
        for (const Vec2& p : c.points) {
            x0 = std::min(x0, p.u);
            x1 = std::max(x1, p.u);
            y0 = std::min(y0, p.v);
            y1 = std::max(y1, p.v);
        }
    const double padx = 0.08 * (x1 - x0 + 1e-12);
    const double pady = 0.08 * (y1 - y0 + 1e-12);
    Mapper m{x0 - padx, x1 + padx, y0 - pady, y1 + pady};

    std::ostringstream out;
    svg_header(out, m, title);
    svg_axes(out, m, "axis", "r");

    // rotation axis
    if (y0 <= 0.0 && y1 >= 0.0) {
        out << "<line x1=\"" << fmt(m.X(m.x0)) << "\" y1=\"" << fmt(m.Y(0.0)) << "\" x2=\""
            << fmt(m.X(m.x1)) << "\" y2=\"" << fmt(m.Y(0.0))
            << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    }

    double ly = m.margin + m.py + 30;
    for (const ProfileCurve& c : profiles) {
        out << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.8\" points=\"";
        for (const Vec2& p : c.points) out << fmt(m.X(p.u)) << "," << fmt(m.Y(p.v)) << " ";
        out << "\"/>\n";
        out << "<line x1=\"" << fmt(m.margin + 8) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(m.margin + 34) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << c.color
            << "\" stroke-width=\"2\"/><text x=\"" << fmt(m.margin + 40) << "\" y=\""
            << fmt(ly + 4) << "\" font-family=\"sans-serif\" font-size=\"12\">" << c.label
            << "</text>\n";
        ly += 16.0;
    }
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output path: " + path);
    out << content;
}

} // namespace frontindex
