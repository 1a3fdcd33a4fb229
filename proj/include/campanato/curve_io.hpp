#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "campanato/vanishing.hpp"

namespace campanato {

/// 17-significant-digit decimal rendering; round-trips doubles exactly.
inline std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// CSV body: header `parameter,value` plus one row per point, bit-stable
/// for identical curves.
inline std::string curve_csv(const DecayCurve& curve) {
    std::string out = "parameter,value\n";
    for (const auto& [p, v] : curve.points) {
        out += format17(p);
        out += ',';
        out += format17(v);
        out += '\n';
    }
    return out;
}

inline DecayCurve read_curve_csv(std::istream& in, CurveAxis axis) {
    DecayCurve c;
    c.axis = axis;
    std::string line;
    if (!std::getline(in, line) || line != "parameter,value")
        throw std::runtime_error("curve csv: missing header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("curve csv: malformed row");
        c.points.emplace_back(std::stod(line.substr(0, comma)),
                              std::stod(line.substr(comma + 1)));
    }
    return c;
}

/// Log-log single-polyline SVG with axis labels. Non-positive values are
/// clamped at the documented floor before taking logs.
inline std::string curve_svg(const DecayCurve& curve, double log_floor = 1e-12) {
    if (curve.points.empty()) throw std::invalid_argument("curve_svg: empty curve");
    const int W = 640, H = 480, M = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto clamp = [&](double v) { return std::log10(std::max(v, log_floor)); };
    for (const auto& [p, v] : curve.points) {
        xmin = std::min(xmin, clamp(p));
        xmax = std::max(xmax, clamp(p));
        ymin = std::min(ymin, clamp(v));
        ymax = std::max(ymax, clamp(v));
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\""
       << H - M << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15
       << "\" text-anchor=\"middle\" font-size=\"14\">log10 " << curve_axis_name(curve.axis)
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << H / 2
       << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 " << H / 2
       << ")\">log10 value</text>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (const auto& [p, v] : curve.points) {
        double px = M + (clamp(p) - xmin) / (xmax - xmin) * (W - 2 * M);
        double py = H - M - (clamp(v) - ymin) / (ymax - ymin) * (H - 2 * M);
        os << format17(px) << "," << format17(py) << " ";
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

enum class CurveFormat { csv, svg };

inline void write_curve(const DecayCurve& curve, const std::string& path, CurveFormat fmt,
                        double log_floor = 1e-12) {
    if (curve.points.empty()) throw std::invalid_argument("write_curve: empty curve");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_curve: cannot open '" + path + "'");
    out << (fmt == CurveFormat::csv ? curve_csv(curve) : curve_svg(curve, log_floor));
    if (!out) throw std::runtime_error("write_curve: write failed for '" + path + "'");
}

}  // namespace campanato
