#pragma once

// SVG 1.1 rendering of a closed body in one or two angle coordinates. The
// unit square fills a 400 px frame inside a 512 x 512 viewBox; vertices are
// labelled with exact fractions.

#include "aalp/polytope.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace aalp::cli {

struct SvgOptions {
    std::vector<std::string> axis_names; // one or two
    std::string title;
    bool exact = true;
};

namespace detail {

constexpr double frame_lo = 56.0;
constexpr double frame_size = 400.0;

inline std::string px(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline double sx(const Rational& x) { return frame_lo + frame_size * x.convert_to<double>(); }
inline double sy(const Rational& y) { return frame_lo + frame_size * (1.0 - y.convert_to<double>()); }

inline std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

inline std::string fraction_point(const RationalVector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + to_string(v[i]);
    return out + ")";
}

// Counterclockwise order around the centroid, exact.
inline std::vector<RationalVector> ccw(std::vector<RationalVector> pts)
{
    if (pts.size() < 3)
        return pts;
    RationalVector c(2, Rational(0));
    for (const auto& p : pts) {
        c[0] += p[0];
        c[1] += p[1];
    }
    c[0] /= static_cast<long>(pts.size());
    c[1] /= static_cast<long>(pts.size());
    auto half = [&](const RationalVector& p) {
        const Rational dx = p[0] - c[0], dy = p[1] - c[1];
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::sort(pts.begin(), pts.end(), [&](const RationalVector& a, const RationalVector& b) {
        const int ha = half(a), hb = half(b);
        if (ha != hb)
            return ha < hb;
        const Rational cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
        return cross > 0;
    });
    return pts;
}

} // namespace detail

/// `closed` must be weak, bounded and of dimension 1 or 2.
inline std::string render_svg(const HPolytope& closed, const SvgOptions& opt)
{
    if (closed.dim != 1 && closed.dim != 2)
        throw Error("SVG output needs a body in one or two coordinates");
    using detail::px;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"512\" height=\"512\" "
          "viewBox=\"0 0 512 512\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n";
    if (!opt.exact)
        os << "<text x=\"256\" y=\"286\" font-family=\"sans-serif\" font-size=\"96\" fill=\"#dddddd\" "
              "text-anchor=\"middle\" transform=\"rotate(-30 256 256)\">OUTER</text>\n";
    os << "<text x=\"256\" y=\"32\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">"
       << detail::escape(opt.title) << "</text>\n";

    os << "<rect x=\"" << px(detail::frame_lo) << "\" y=\"" << px(detail::frame_lo) << "\" width=\""
       << px(detail::frame_size) << "\" height=\"" << px(detail::frame_size)
       << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    const std::string xname = opt.axis_names.size() > 0 ? opt.axis_names[0] : "b1";
    os << "<text x=\"256\" y=\"496\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
       << detail::escape(xname) << "</text>\n";
    if (closed.dim == 2) {
        const std::string yname = opt.axis_names.size() > 1 ? opt.axis_names[1] : "b2";
        os << "<text x=\"20\" y=\"256\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\" "
              "transform=\"rotate(-90 20 256)\">"
           << detail::escape(yname) << "</text>\n";
    }

    const bool feasible = is_feasible(closed);
    std::vector<RationalVector> pts;
    if (feasible)
        pts = vertices(closed).vertices;
    if (!feasible) {
        os << "<text x=\"256\" y=\"262\" font-family=\"sans-serif\" font-size=\"18\" text-anchor=\"middle\">"
              "empty</text>\n";
    } else if (closed.dim == 1) {
        const RationalVector lo = pts.front(), hi = pts.back();
        os << "<line x1=\"" << px(detail::sx(lo[0])) << "\" y1=\"256.00\" x2=\"" << px(detail::sx(hi[0]))
           << "\" y2=\"256.00\" stroke=\"#3366cc\" stroke-width=\"8\"/>\n";
    } else {
        const auto ring = detail::ccw(pts);
        os << "<polygon points=\"";
        for (std::size_t i = 0; i < ring.size(); ++i)
            os << (i ? " " : "") << px(detail::sx(ring[i][0])) << "," << px(detail::sy(ring[i][1]));
        os << "\" fill=\"#3366cc\" fill-opacity=\"0.35\" stroke=\"#3366cc\" stroke-width=\"2\"/>\n";
    }
    for (const auto& v : pts) {
        const Rational y = closed.dim == 2 ? v[1] : Rational(1, 2);
        const double cx = detail::sx(v[0]), cy = detail::sy(y);
        os << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(cy) << "\" r=\"4\" fill=\"black\"/>\n";
        const double lx = cx + (v[0] > Rational(1, 2) ? -8.0 : 8.0);
        const double ly = cy + (y > Rational(1, 2) ? -8.0 : 18.0);
        os << "<text x=\"" << px(lx) << "\" y=\"" << px(ly) << "\" font-family=\"sans-serif\" font-size=\"14\" "
           << "text-anchor=\"" << (v[0] > Rational(1, 2) ? "end" : "start") << "\">" << detail::fraction_point(v)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace aalp::cli
