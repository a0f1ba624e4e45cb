#include "turan/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>

#include "turan/errors.hpp"

namespace turan {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 620.0;
constexpr double kMargin = 70.0;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct Axes {
    double x_max;
    double y_max;

    double px(double x) const { return kMargin + x / x_max * (kWidth - 2 * kMargin); }
    double py(double y) const { return kHeight - kMargin - y / y_max * (kHeight - 2 * kMargin); }
};

}  // namespace

void emit_plot(const std::vector<ExperimentRecord>& records, int r, int ell, std::ostream& out) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to plot");
    std::vector<ExperimentRecord> sorted = records;
    std::sort(sorted.begin(), sorted.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.x != b.x) return a.x < b.x;
        return a.seed < b.seed;
    });

    Axes ax{static_cast<double>(r), static_cast<double>(r)};
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
        << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(kHeight) << "\">\n";
    out << "<rect width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
        << "\" fill=\"white\"/>\n";

    // axes and integer ticks
    out << "<line x1=\"" << num(ax.px(0)) << "\" y1=\"" << num(ax.py(0)) << "\" x2=\""
        << num(ax.px(ax.x_max)) << "\" y2=\"" << num(ax.py(0)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << num(ax.px(0)) << "\" y1=\"" << num(ax.py(0)) << "\" x2=\""
        << num(ax.px(0)) << "\" y2=\"" << num(ax.py(ax.y_max)) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= r; ++i) {
        out << "<text x=\"" << num(ax.px(i)) << "\" y=\"" << num(ax.py(0) + 22)
            << "\" font-size=\"13\" text-anchor=\"middle\">" << i << "</text>\n";
        out << "<text x=\"" << num(ax.px(0) - 14) << "\" y=\"" << num(ax.py(i) + 4)
            << "\" font-size=\"13\" text-anchor=\"end\">" << i << "</text>\n";
    }
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 18)
        << "\" font-size=\"14\" text-anchor=\"middle\">x (density exponent)</text>\n";
    out << "<text x=\"" << num(18.0) << "\" y=\"" << num(kHeight / 2)
        << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << num(kHeight / 2) << ")\">log_n of the measured free-subgraph size</text>\n";

    // prediction overlay: lower envelope as a solid polyline
    {
        std::vector<double> breaks{0.0, 1.0 + 1.0 / (2.0 * ell - 1.0), 2.0 + 1.0 / (2.0 * ell - 1.0),
                                   static_cast<double>(r)};
        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            double x = breaks[i];
            if (i) out << ' ';
            out << num(ax.px(x)) << ',' << num(ax.py(predicted_exponent_lower(r, ell, x)));
        }
        out << "\"/>\n";
    }
    // the undetermined window's upper envelope (r = 3 only), dashed
    if (r == 3) {
        const double l = ell;
        double lo = 2.0 + 1.0 / (4.0 * l - 2.0);
        double hi = 2.0 + (2.0 * l - 1.0) / (4.0 * l * l - 5.0 * l + 2.0);
        out << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" points=\""
            << num(ax.px(lo)) << ',' << num(ax.py(predicted_exponent_upper(r, ell, lo))) << ' '
            << num(ax.px(hi)) << ',' << num(ax.py(predicted_exponent_upper(r, ell, hi))) << "\"/>\n";
    }

    // p0/p1 markers per distinct n (r = 3 thresholds)
    if (r == 3) {
        std::set<int> ns;
        for (const auto& rec : sorted) ns.insert(rec.n);
        for (int n : ns) {
            double x0 = r + std::log(marker_p0(ell, n)) / std::log(static_cast<double>(n));
            double x1 = r + std::log(marker_p1(ell, n)) / std::log(static_cast<double>(n));
            for (double xm : {x0, x1}) {
                if (xm < 0 || xm > r) continue;
                out << "<line x1=\"" << num(ax.px(xm)) << "\" y1=\"" << num(ax.py(0)) << "\" x2=\""
                    << num(ax.px(xm)) << "\" y2=\"" << num(ax.py(ax.y_max))
                    << "\" stroke=\"#999999\" stroke-dasharray=\"2 5\"/>\n";
            }
            out << "<text x=\"" << num(ax.px(std::min(static_cast<double>(r), std::max(0.0, x0))))
                << "\" y=\"" << num(ax.py(ax.y_max) - 6) << "\" font-size=\"10\" fill=\"#777777\""
                << " text-anchor=\"middle\">p0(n=" << n << ")</text>\n";
        }
    }

    // data marks
    for (const auto& rec : sorted) {
        double logn = std::log(static_cast<double>(rec.n));
        double y = rec.ex_lower > 0 ? std::log(static_cast<double>(rec.ex_lower)) / logn : 0.0;
        out << "<circle cx=\"" << num(ax.px(rec.x)) << "\" cy=\"" << num(ax.py(std::min(y, ax.y_max)))
            << "\" r=\"3.5\" fill=\"#2ca02c\" fill-opacity=\"0.8\"/>\n";
        if (rec.ex_upper > rec.ex_lower) {
            double yu = std::log(static_cast<double>(rec.ex_upper)) / logn;
            out << "<line x1=\"" << num(ax.px(rec.x) - 3) << "\" y1=\""
                << num(ax.py(std::min(yu, ax.y_max))) << "\" x2=\"" << num(ax.px(rec.x) + 3)
                << "\" y2=\"" << num(ax.py(std::min(yu, ax.y_max)))
                << "\" stroke=\"#2ca02c\" stroke-width=\"1\"/>\n";
        }
    }
    out << "</svg>\n";
}

void emit_plot_file(const std::vector<ExperimentRecord>& records, int r, int ell,
                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path);
    emit_plot(records, r, ell, out);
}

}  // namespace turan
