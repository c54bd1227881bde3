#include "tgs/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "tgs/errors.hpp"

namespace tgs {

namespace {

struct Series {
    const char* color;
    std::vector<double> x, y;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
    bool log_x = false;
    bool log_y = false;
};

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void absorb(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return !(lo <= hi); }
    void pad() {
        if (empty()) {
            lo = 0.0;
            hi = 1.0;
            return;
        }
        if (lo == hi) {
            const double d = std::max(1.0, std::abs(lo)) * 0.5;
            lo -= d;
            hi += d;
            return;
        }
        const double d = 0.05 * (hi - lo);
        lo -= d;
        hi += d;
    }
};

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double axis_value(double v, bool log_axis) {
    if (!log_axis) return v;
    return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
}

// Draw one panel into `out` with its top-left corner at (ox, oy).
void draw_panel(std::ostringstream& out, const Panel& panel, double ox, double oy, double w,
                double h) {
    const double pad_l = 46, pad_r = 8, pad_t = 22, pad_b = 20;
    const double px = ox + pad_l, py = oy + pad_t;
    const double pw = w - pad_l - pad_r, ph = h - pad_t - pad_b;

    Range rx, ry;
    for (const Series& s : panel.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            rx.absorb(axis_value(s.x[i], panel.log_x));
            ry.absorb(axis_value(s.y[i], panel.log_y));
        }
    rx.pad();
    ry.pad();

    auto sx = [&](double v) { return px + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto sy = [&](double v) { return py + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

    out << "<rect x='" << px << "' y='" << py << "' width='" << pw << "' height='" << ph
        << "' fill='none' stroke='#b0b0b0'/>\n";
    out << "<text x='" << ox + w / 2 << "' y='" << oy + 14
        << "' text-anchor='middle' font-size='12' fill='#202020'>" << panel.title << "</text>\n";

    auto axis_label = [&](double v, bool log_axis) {
        return num(log_axis ? std::pow(10.0, v) : v);
    };
    out << "<text x='" << px - 4 << "' y='" << py + 8
        << "' text-anchor='end' font-size='9' fill='#606060'>" << axis_label(ry.hi, panel.log_y)
        << "</text>\n";
    out << "<text x='" << px - 4 << "' y='" << py + ph
        << "' text-anchor='end' font-size='9' fill='#606060'>" << axis_label(ry.lo, panel.log_y)
        << "</text>\n";
    out << "<text x='" << px << "' y='" << py + ph + 12
        << "' text-anchor='start' font-size='9' fill='#606060'>" << axis_label(rx.lo, panel.log_x)
        << "</text>\n";
    out << "<text x='" << px + pw << "' y='" << py + ph + 12
        << "' text-anchor='end' font-size='9' fill='#606060'>" << axis_label(rx.hi, panel.log_x)
        << "</text>\n";

    for (const Series& s : panel.series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.2' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double vx = axis_value(s.x[i], panel.log_x);
            const double vy = axis_value(s.y[i], panel.log_y);
            if (!std::isfinite(vx) || !std::isfinite(vy)) continue;
            out << num(sx(vx)) << "," << num(sy(vy)) << " ";
        }
        out << "'/>\n";
    }
}

void write_panels(const std::vector<Panel>& panels, int cols, const std::string& path) {
    const double pw = 310, ph = 225, margin = 10;
    const int rows = (static_cast<int>(panels.size()) + cols - 1) / cols;
    const double width = cols * pw + 2 * margin;
    const double height = rows * ph + 2 * margin;

    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = margin + (i % cols) * pw;
        const double oy = margin + (i / cols) * ph;
        draw_panel(out, panels[i], ox, oy, pw, ph);
    }
    out << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << out.str();
    if (!f) throw IoError("short write: " + path);
}

}  // namespace

void write_diagnostics_svg(const DiagnosticsSeries& series, const std::string& path) {
    std::vector<double> t;
    for (const DiagnosticsRecord& r : series.records) t.push_back(r.t);
    auto col = [&](double DiagnosticsRecord::* member) {
        std::vector<double> v;
        for (const DiagnosticsRecord& r : series.records) v.push_back(r.*member);
        return v;
    };

    std::vector<Panel> panels;
    Panel mass{"mass (blue) vs bound (red)", {}, false, false};
    mass.series.push_back({"#1f77b4", t, col(&DiagnosticsRecord::mass)});
    mass.series.push_back({"#d62728", t, col(&DiagnosticsRecord::mass_bound)});
    panels.push_back(std::move(mass));

    auto single = [&](const char* title, double DiagnosticsRecord::* member) {
        Panel p{title, {}, false, false};
        p.series.push_back({"#1f77b4", t, col(member)});
        panels.push_back(std::move(p));
    };
    single("p_max", &DiagnosticsRecord::p_max);
    single("second_moment", &DiagnosticsRecord::second_moment);
    single("entropy", &DiagnosticsRecord::entropy);
    single("entropy_diss_cum", &DiagnosticsRecord::entropy_diss_cum);
    single("w_minus_L2", &DiagnosticsRecord::w_minus_L2);
    single("w_minus_L3_cum", &DiagnosticsRecord::w_minus_L3_cum);
    single("lap_L1", &DiagnosticsRecord::lap_L1);
    single("energy", &DiagnosticsRecord::energy);
    single("energy_diss_cum", &DiagnosticsRecord::energy_diss_cum);
    single("clamp_total", &DiagnosticsRecord::clamp_total);

    write_panels(panels, 4, path);
}

void write_convergence_svg(const ConvergenceTable& table, const std::string& path) {
    Panel p{"errors vs parameter (log-log)", {}, true, true};
    Series l1{"#1f77b4", {}, {}};
    Series l2{"#d62728", {}, {}};
    for (const ConvergenceRow& row : table.rows) {
        l1.x.push_back(row.param);
        l1.y.push_back(row.l1_n);
        l2.x.push_back(row.param);
        l2.y.push_back(row.l2_grad_p);
    }
    // First-order slope guide anchored at the coarsest L1 point.
    Series guide{"#909090", {}, {}};
    if (!table.rows.empty() && table.rows.front().l1_n > 0.0) {
        const double x0 = table.rows.front().param;
        const double y0 = table.rows.front().l1_n;
        for (const ConvergenceRow& row : table.rows) {
            guide.x.push_back(row.param);
            guide.y.push_back(y0 * row.param / x0);
        }
    }
    p.series.push_back(std::move(guide));
    p.series.push_back(std::move(l1));
    p.series.push_back(std::move(l2));

    std::vector<Panel> panels{std::move(p)};
    write_panels(panels, 1, path);
}

}  // namespace tgs
