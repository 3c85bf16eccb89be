#include "gofdm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gofdm {

namespace {

constexpr double kLogFloor = 1e-6;

const char* metric_label(PlotMetric m) {
    switch (m) {
        case PlotMetric::MSE: return "MSE";
        case PlotMetric::SER: return "SER";
        case PlotMetric::THROUGHPUT: return "Throughput (bits/subcarrier)";
    }
    return "?";
}

double metric_value(const AggregateRow& r, PlotMetric m) {
    switch (m) {
        case PlotMetric::MSE: return r.mean_mse;
        case PlotMetric::SER: return r.mean_ser;
        case PlotMetric::THROUGHPUT: return r.mean_throughput;
    }
    return 0.0;
}

const char* estimator_color(const std::string& name) {
    if (name == "ls") return "#d62728";
    if (name == "lmmse") return "#1f77b4";
    if (name == "subgroup") return "#2ca02c";
    return "#7f7f7f";
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Series {
    std::string estimator;
    std::vector<double> x;  // snr dB
    std::vector<double> y;
};

// Mean of the metric over all rows sharing (estimator, snr); optionally
// restricted to a single d.
std::vector<Series> collect(const std::vector<AggregateRow>& rows, PlotMetric metric,
                            int only_d) {
    std::map<std::string, std::map<double, std::pair<double, int>>> acc;
    for (const AggregateRow& r : rows) {
        if (only_d >= 0 && r.d != only_d) continue;
        auto& slot = acc[r.estimator][r.snr_db];
        slot.first += metric_value(r, metric);
        slot.second += 1;
    }
    std::vector<Series> series;
    for (const char* name : {"ls", "lmmse", "subgroup"}) {
        auto it = acc.find(name);
        if (it == acc.end()) continue;
        Series s;
        s.estimator = name;
        for (const auto& [snr, sum_count] : it->second) {
            s.x.push_back(snr);
            s.y.push_back(sum_count.first / sum_count.second);
        }
        series.push_back(std::move(s));
    }
    // Any estimator label outside the known trio still gets drawn.
    for (const auto& [name, by_snr] : acc) {
        if (name == "ls" || name == "lmmse" || name == "subgroup") continue;
        Series s;
        s.estimator = name;
        for (const auto& [snr, sum_count] : by_snr) {
            s.x.push_back(snr);
            s.y.push_back(sum_count.first / sum_count.second);
        }
        series.push_back(std::move(s));
    }
    return series;
}

struct Panel {
    std::string title;
    std::vector<Series> series;
};

void render_panel(std::ostringstream& svg, const Panel& panel, PlotMetric metric,
                  double ox, double oy, double width, double height, bool& clamped) {
    const bool log_y = metric != PlotMetric::THROUGHPUT;
    const double pad_l = 58, pad_r = 12, pad_t = 26, pad_b = 38;
    const double plot_w = width - pad_l - pad_r;
    const double plot_h = height - pad_t - pad_b;

    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const Series& s : panel.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double y = s.y[i];
            if (log_y && y < kLogFloor) {
                y = kLogFloor;
                clamped = true;
            }
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, log_y ? std::log10(y) : y);
            y_max = std::max(y_max, log_y ? std::log10(y) : y);
        }
    }
    if (x_max <= x_min) { x_min -= 1.0; x_max += 1.0; }
    if (y_max <= y_min) { y_min -= 1.0; y_max += 1.0; }
    if (!log_y) y_min = std::min(0.0, y_min);

    auto sx = [&](double x) { return ox + pad_l + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double yv) {
        const double t = log_y ? std::log10(std::max(yv, kLogFloor)) : yv;
        return oy + pad_t + (1.0 - (t - y_min) / (y_max - y_min)) * plot_h;
    };

    svg << "<rect x='" << fmt(ox + pad_l) << "' y='" << fmt(oy + pad_t) << "' width='"
        << fmt(plot_w) << "' height='" << fmt(plot_h)
        << "' fill='white' stroke='#888' stroke-width='1'/>\n";
    svg << "<text x='" << fmt(ox + width / 2) << "' y='" << fmt(oy + 16)
        << "' text-anchor='middle' font-size='13'>" << panel.title << "</text>\n";

    // y ticks: decades when log, 5 even steps otherwise
    if (log_y) {
        for (int e = static_cast<int>(std::floor(y_min)); e <= static_cast<int>(std::ceil(y_max)); ++e) {
            const double yy = sy(std::pow(10.0, e));
            if (yy < oy + pad_t - 1 || yy > oy + pad_t + plot_h + 1) continue;
            svg << "<line x1='" << fmt(ox + pad_l) << "' y1='" << fmt(yy) << "' x2='"
                << fmt(ox + pad_l + plot_w) << "' y2='" << fmt(yy)
                << "' stroke='#ddd' stroke-width='0.5'/>\n";
            svg << "<text x='" << fmt(ox + pad_l - 6) << "' y='" << fmt(yy + 3)
                << "' text-anchor='end' font-size='10'>1e" << e << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double v = y_min + (y_max - y_min) * i / 5.0;
            const double yy = sy(v);
            svg << "<line x1='" << fmt(ox + pad_l) << "' y1='" << fmt(yy) << "' x2='"
                << fmt(ox + pad_l + plot_w) << "' y2='" << fmt(yy)
                << "' stroke='#ddd' stroke-width='0.5'/>\n";
            svg << "<text x='" << fmt(ox + pad_l - 6) << "' y='" << fmt(yy + 3)
                << "' text-anchor='end' font-size='10'>" << fmt(v) << "</text>\n";
        }
    }
    for (const Series& s : panel.series) {
        for (double xv : s.x) {
            const double xx = sx(xv);
            svg << "<text x='" << fmt(xx) << "' y='" << fmt(oy + pad_t + plot_h + 14)
                << "' text-anchor='middle' font-size='10'>" << fmt(xv) << "</text>\n";
        }
        break;  // tick labels once, from the first series
    }
    svg << "<text x='" << fmt(ox + pad_l + plot_w / 2) << "' y='" << fmt(oy + height - 8)
        << "' text-anchor='middle' font-size='11'>SNR (dB)</text>\n";

    for (const Series& s : panel.series) {
        svg << "<polyline fill='none' stroke='" << estimator_color(s.estimator)
            << "' stroke-width='1.8' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg << fmt(sx(s.x[i])) << "," << fmt(sy(s.y[i])) << " ";
        }
        svg << "'/>\n";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            svg << "<circle cx='" << fmt(sx(s.x[i])) << "' cy='" << fmt(sy(s.y[i]))
                << "' r='2.6' fill='" << estimator_color(s.estimator) << "'/>\n";
        }
    }
}

}  // namespace

void emit_plots(const std::vector<AggregateRow>& rows, PlotMetric metric,
                const std::string& path, bool facet_by_d) {
    if (rows.empty()) throw std::invalid_argument("emit_plots: no rows");

    std::vector<Panel> panels;
    if (facet_by_d) {
        std::set<int> ds;
        for (const AggregateRow& r : rows) ds.insert(r.d);
        for (int d : ds) {
            panels.push_back({"d = " + std::to_string(d), collect(rows, metric, d)});
        }
    } else {
        panels.push_back({std::string(metric_label(metric)) + " vs SNR (mean over d)",
                          collect(rows, metric, -1)});
    }

    const double pw = 460, ph = 330;
    const int cols = std::min<int>(3, static_cast<int>(panels.size()));
    const int rows_n = (static_cast<int>(panels.size()) + cols - 1) / cols;
    const double total_w = pw * cols;
    const double total_h = ph * rows_n + 30;  // legend strip at the bottom

    std::ostringstream svg;
    bool clamped = false;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << total_w << "' height='"
        << total_h << "' font-family='sans-serif'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const double ox = pw * static_cast<double>(i % cols);
        const double oy = ph * static_cast<double>(i / cols);
        render_panel(svg, panels[i], metric, ox, oy, pw, ph, clamped);
    }

    double lx = 14;
    const double ly = total_h - 12;
    for (const char* name : {"ls", "lmmse", "subgroup"}) {
        svg << "<line x1='" << fmt(lx) << "' y1='" << fmt(ly - 4) << "' x2='" << fmt(lx + 22)
            << "' y2='" << fmt(ly - 4) << "' stroke='" << estimator_color(name)
            << "' stroke-width='2.5'/>\n";
        svg << "<text x='" << fmt(lx + 27) << "' y='" << fmt(ly) << "' font-size='11'>" << name
            << "</text>\n";
        lx += 110;
    }
    if (clamped) {
        svg << "<text x='" << fmt(lx + 10) << "' y='" << fmt(ly)
            << "' font-size='10' fill='#555'>zero values clamped to 1e-06 on the log axis</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_plots: cannot open " + path);
    out << svg.str();
    if (!out) throw std::runtime_error("emit_plots: write failed for " + path);
}

}  // namespace gofdm
