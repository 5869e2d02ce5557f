// Copyright 2026 The fcqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fcqst::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

// Maps data to pixels on one axis; log axes work in log10 space.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;
    double p0 = 0.0;
    double p1 = 1.0;

    double tr(double v) const { return log ? std::log10(v) : v; }
    double px(double v) const { return p0 + (tr(v) - lo) / (hi - lo) * (p1 - p0); }

    std::vector<double> ticks() const {
        std::vector<double> t;
        for (int k = 0; k <= 4; ++k) {
            const double u = lo + (hi - lo) * k / 4.0;
            t.push_back(log ? std::pow(10.0, u) : u);
        }
        return t;
    }
};

Axis make_axis(std::vector<double> v, bool log, double p0, double p1) {
    Axis a;
    a.log = log;
    a.p0 = p0;
    a.p1 = p1;
    for (auto& x : v) x = a.tr(x);
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double lo = *mn;
    double hi = *mx;
    const double pad = hi > lo ? 0.05 * (hi - lo) : std::max(0.5, 0.1 * std::abs(lo));
    a.lo = lo - pad;
    a.hi = hi + pad;
    return a;
}

}  // namespace

std::string render_fit_svg(const std::vector<std::pair<double, double>>& points, const FitResult& fit,
                           const std::string& x_label, const std::string& y_label) {
    const bool log = fit.model == "power";
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& [x, y] : points) {
        if (log && (x <= 0.0 || y <= 0.0)) continue;
        xs.push_back(x);
        ys.push_back(y);
    }
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (xs.empty()) {
        s << "<text x=\"20\" y=\"40\">no plottable data</text>\n</svg>\n";
        return s.str();
    }
    const Axis ax = make_axis(xs, log, kLeft, kWidth - kRight);
    const Axis ay = make_axis(ys, log, kHeight - kBottom, kTop);

    s << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kHeight - kBottom
      << "\" stroke=\"black\"/>\n";
    for (double t : ax.ticks()) {
        const double x = ax.px(t);
        s << "<line x1=\"" << x << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << x << "\" y2=\""
          << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 20 << "\" text-anchor=\"middle\">" << fmt(t)
          << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = ay.px(t);
        s << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
          << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    s << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << escape(x_label) << (log ? " (log)" : "") << "</text>\n";
    s << "<text transform=\"translate(18," << (kTop + kHeight - kBottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << (log ? " (log)" : "") << "</text>\n";

    for (std::size_t i = 0; i < xs.size(); ++i) {
        s << "<circle cx=\"" << ax.px(xs[i]) << "\" cy=\"" << ay.px(ys[i]) << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    }

    if (fit.params.size() == 2 && !fit.degenerate) {
        const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
        std::ostringstream path;
        constexpr int kSteps = 64;
        bool first = true;
        for (int k = 0; k <= kSteps; ++k) {
            const double u = ax.tr(*xmin) + (ax.tr(*xmax) - ax.tr(*xmin)) * k / kSteps;
            const double x = log ? std::pow(10.0, u) : u;
            const double y = log ? fit.params[1] * std::pow(x, fit.params[0]) : fit.params[0] * x + fit.params[1];
            if (log && y <= 0.0) continue;
            path << (first ? "M" : " L") << ax.px(x) << ' ' << ay.px(y);
            first = false;
        }
        s << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
        const std::string label = log ? "fit: y = " + fmt(fit.params[1]) + " x^" + fmt(fit.params[0])
                                      : "fit: y = " + fmt(fit.params[0]) + " x + " + fmt(fit.params[1]);
        s << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 5 << "\" fill=\"#d62728\">" << escape(label)
          << (std::isnan(fit.r2) ? "" : ", r2 = " + fmt(fit.r2)) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace fcqst::cli
