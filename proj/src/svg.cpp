#include "tcelldyn/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace tcelldyn::svg {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 18.0;
constexpr double kMarginTop = 34.0;
constexpr double kMarginBottom = 46.0;

std::string num(double v, int precision = 6) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    const double range = hi - lo;
    if (!(range > 0.0)) return ticks;
    double step = std::pow(10.0, std::floor(std::log10(range / target)));
    const double candidates[] = {1.0, 2.0, 5.0, 10.0};
    for (double c : candidates)
        if (range / (step * c) <= target) {
            step *= c;
            break;
        }
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + 1e-9 * range; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * range ? 0.0 : t);
    return ticks;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

void data_bounds(const Plot& p, double& x0, double& x1, double& y0, double& y1) {
    bool any = false;
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    for (const auto& s : p.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
            any = true;
        }
    for (const auto& h : p.hlines) {
        y0 = std::min(y0, h.y);
        y1 = std::max(y1, h.y);
        any = true;
    }
    for (const auto& m : p.markers) {
        x0 = std::min(x0, m.x);
        x1 = std::max(x1, m.x);
        y0 = std::min(y0, m.y);
        y1 = std::max(y1, m.y);
        any = true;
    }
    if (!any) {
        x0 = y0 = 0.0;
        x1 = y1 = 1.0;
    }
    if (p.x_min) x0 = *p.x_min;
    if (p.x_max) x1 = *p.x_max;
    if (p.y_min) y0 = *p.y_min;
    if (p.y_max) y1 = *p.y_max;
    auto pad = [](double& lo, double& hi, bool fixed_lo, bool fixed_hi) {
        double d = hi - lo;
        if (d <= 0.0) d = std::max(1.0, std::abs(hi));
        if (!fixed_lo) lo -= 0.04 * d;
        if (!fixed_hi) hi += 0.04 * d;
    };
    pad(x0, x1, p.x_min.has_value(), p.x_max.has_value());
    pad(y0, y1, p.y_min.has_value(), p.y_max.has_value());
}

void render_frame(std::string& out, double off_y, double plot_w, double plot_h,
                  const std::string& title, const std::string& x_label,
                  const std::string& y_label, const std::vector<double>& x_ticks,
                  const std::vector<double>& y_ticks, double x0, double x1, double y0, double y1) {
    const double px0 = kMarginLeft;
    const double py0 = off_y + kMarginTop;
    auto sx = [&](double x) { return px0 + (x - x0) / (x1 - x0) * plot_w; };
    auto sy = [&](double y) { return py0 + (y1 - y) / (y1 - y0) * plot_h; };

    for (double t : x_ticks) {
        const double x = sx(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(py0 + plot_h) + "\" stroke=\"#e9ecef\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(py0 + plot_h + 16) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#495057\" "
               "text-anchor=\"middle\">" +
               num(t) + "</text>\n";
    }
    for (double t : y_ticks) {
        const double y = sy(t);
        out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(y) + "\" x2=\"" + num(px0 + plot_w) +
               "\" y2=\"" + num(y) + "\" stroke=\"#e9ecef\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(px0 - 6) + "\" y=\"" + num(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#495057\" "
               "text-anchor=\"end\">" +
               num(t) + "</text>\n";
    }
    out += "<rect x=\"" + num(px0) + "\" y=\"" + num(py0) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"#343a40\" stroke-width=\"1\"/>\n";
    if (!title.empty())
        out += "<text x=\"" + num(px0 + plot_w / 2) + "\" y=\"" + num(off_y + 20) +
               "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#212529\" "
               "text-anchor=\"middle\">" +
               escape(title) + "</text>\n";
    if (!x_label.empty())
        out += "<text x=\"" + num(px0 + plot_w / 2) + "\" y=\"" + num(py0 + plot_h + 34) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#212529\" "
               "text-anchor=\"middle\">" +
               escape(x_label) + "</text>\n";
    if (!y_label.empty())
        out += "<text x=\"" + num(px0 - 46) + "\" y=\"" + num(py0 + plot_h / 2) +
               "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#212529\" "
               "text-anchor=\"middle\" transform=\"rotate(-90 " + num(px0 - 46) + " " +
               num(py0 + plot_h / 2) + ")\">" + escape(y_label) + "</text>\n";
}

}  // namespace

std::string render(const std::vector<Plot>& panels, int width, int panel_height) {
    const double plot_w = width - kMarginLeft - kMarginRight;
    const double plot_h = panel_height - kMarginTop - kMarginBottom;
    const int total_h = panel_height * static_cast<int>(panels.size());

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(total_h) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(total_h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Plot& plot = panels[p];
        const double off_y = static_cast<double>(panel_height) * static_cast<double>(p);
        double x0, x1, y0, y1;
        data_bounds(plot, x0, x1, y0, y1);
        const double px0 = kMarginLeft;
        const double py0 = off_y + kMarginTop;
        auto sx = [&](double x) { return px0 + (x - x0) / (x1 - x0) * plot_w; };
        auto sy = [&](double y) { return py0 + (y1 - y) / (y1 - y0) * plot_h; };

        const std::string clip_id = "clip" + std::to_string(p);
        out += "<clipPath id=\"" + clip_id + "\"><rect x=\"" + num(px0) + "\" y=\"" + num(py0) +
               "\" width=\"" + num(plot_w) + "\" height=\"" + num(plot_h) + "\"/></clipPath>\n";

        render_frame(out, off_y, plot_w, plot_h, plot.title, plot.x_label, plot.y_label,
                     nice_ticks(x0, x1), nice_ticks(y0, y1, 5), x0, x1, y0, y1);

        for (const auto& h : plot.hlines) {
            out += "<line x1=\"" + num(px0) + "\" y1=\"" + num(sy(h.y)) + "\" x2=\"" +
                   num(px0 + plot_w) + "\" y2=\"" + num(sy(h.y)) + "\" stroke=\"" + h.color +
                   "\" stroke-width=\"1\" stroke-dasharray=\"5 4\"/>\n";
            if (!h.label.empty())
                out += "<text x=\"" + num(px0 + plot_w - 4) + "\" y=\"" + num(sy(h.y) - 4) +
                       "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + h.color +
                       "\" text-anchor=\"end\">" + escape(h.label) + "</text>\n";
        }

        for (const auto& s : plot.series) {
            if (s.x.empty()) continue;
            out += "<polyline clip-path=\"url(#" + clip_id + ")\" fill=\"none\" stroke=\"" +
                   s.color + "\" stroke-width=\"1.5\"";
            if (s.dashed) out += " stroke-dasharray=\"6 4\"";
            out += " points=\"";
            // Thin dense polylines to keep files reasonable.
            const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 4000);
            for (std::size_t i = 0; i < s.x.size(); i += stride) {
                out += num(sx(s.x[i]), 7);
                out.push_back(',');
                out += num(sy(s.y[i]), 7);
                out.push_back(' ');
            }
            if ((s.x.size() - 1) % stride != 0) {
                out += num(sx(s.x.back()), 7);
                out.push_back(',');
                out += num(sy(s.y.back()), 7);
            }
            out += "\"/>\n";
        }

        for (const auto& m : plot.markers)
            out += "<circle cx=\"" + num(sx(m.x)) + "\" cy=\"" + num(sy(m.y)) +
                   "\" r=\"3.5\" fill=\"" + m.color + "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";

        double legend_y = py0 + 14;
        for (const auto& s : plot.series) {
            if (s.label.empty()) continue;
            const double lx = px0 + plot_w - 150;
            out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(legend_y - 4) + "\" x2=\"" +
                   num(lx + 22) + "\" y2=\"" + num(legend_y - 4) + "\" stroke=\"" + s.color +
                   "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
            out += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(legend_y) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#212529\">" +
                   escape(s.label) + "</text>\n";
            legend_y += 15;
        }
    }
    out += "</svg>\n";
    return out;
}

std::string render_heatmaps(const std::vector<Heatmap>& panels, int width, int panel_height) {
    const double plot_w = width - kMarginLeft - kMarginRight;
    const double plot_h = panel_height - kMarginTop - kMarginBottom;
    const int legend_h = 24;
    const int total_h = panel_height * static_cast<int>(panels.size()) + legend_h;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(total_h) + "\" viewBox=\"0 0 " + std::to_string(width) +
           " " + std::to_string(total_h) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const Heatmap& hm = panels[p];
        const double off_y = static_cast<double>(panel_height) * static_cast<double>(p);
        const double px0 = kMarginLeft;
        const double py0 = off_y + kMarginTop;
        const std::size_t n_cols = hm.x_centers.size();
        const std::size_t n_rows = hm.y_centers.size();
        const double cw = plot_w / static_cast<double>(std::max<std::size_t>(n_cols, 1));
        const double ch = plot_h / static_cast<double>(std::max<std::size_t>(n_rows, 1));

        for (std::size_t i = 0; i < n_rows; ++i)
            for (std::size_t j = 0; j < n_cols; ++j) {
                const int idx = hm.cells[i][j];
                const std::string& color =
                    idx >= 0 && idx < static_cast<int>(hm.palette.size()) ? hm.palette[idx]
                                                                          : "#ced4da";
                // Row 0 at the bottom.
                const double x = px0 + cw * static_cast<double>(j);
                const double y = py0 + plot_h - ch * static_cast<double>(i + 1);
                out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(cw) +
                       "\" height=\"" + num(ch) + "\" fill=\"" + color +
                       "\" stroke=\"#ffffff\" stroke-width=\"0.5\"/>\n";
            }

        // Column/row labels at cell centers (skip some when crowded).
        const std::size_t x_stride = std::max<std::size_t>(1, n_cols / 10);
        for (std::size_t j = 0; j < n_cols; j += x_stride)
            out += "<text x=\"" + num(px0 + cw * (static_cast<double>(j) + 0.5)) + "\" y=\"" +
                   num(py0 + plot_h + 16) +
                   "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#495057\" "
                   "text-anchor=\"middle\">" +
                   num(hm.x_centers[j], 4) + "</text>\n";
        const std::size_t y_stride = std::max<std::size_t>(1, n_rows / 8);
        for (std::size_t i = 0; i < n_rows; i += y_stride)
            out += "<text x=\"" + num(px0 - 6) + "\" y=\"" +
                   num(py0 + plot_h - ch * (static_cast<double>(i) + 0.5) + 4) +
                   "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#495057\" "
                   "text-anchor=\"end\">" +
                   num(hm.y_centers[i], 4) + "</text>\n";

        out += "<rect x=\"" + num(px0) + "\" y=\"" + num(py0) + "\" width=\"" + num(plot_w) +
               "\" height=\"" + num(plot_h) +
               "\" fill=\"none\" stroke=\"#343a40\" stroke-width=\"1\"/>\n";
        if (!hm.title.empty())
            out += "<text x=\"" + num(px0 + plot_w / 2) + "\" y=\"" + num(off_y + 20) +
                   "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#212529\" "
                   "text-anchor=\"middle\">" +
                   escape(hm.title) + "</text>\n";
        if (!hm.x_label.empty())
            out += "<text x=\"" + num(px0 + plot_w / 2) + "\" y=\"" + num(py0 + plot_h + 34) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#212529\" "
                   "text-anchor=\"middle\">" +
                   escape(hm.x_label) + "</text>\n";
        if (!hm.y_label.empty())
            out += "<text x=\"" + num(px0 - 46) + "\" y=\"" + num(py0 + plot_h / 2) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#212529\" "
                   "text-anchor=\"middle\" transform=\"rotate(-90 " + num(px0 - 46) + " " +
                   num(py0 + plot_h / 2) + ")\">" + escape(hm.y_label) + "</text>\n";
    }

    if (!panels.empty()) {
        double lx = kMarginLeft;
        const double ly = panel_height * static_cast<double>(panels.size()) + 14;
        const Heatmap& hm = panels.front();
        for (std::size_t i = 0; i < hm.palette.size() && i < hm.legend_labels.size(); ++i) {
            out += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 9) +
                   "\" width=\"12\" height=\"12\" fill=\"" + hm.palette[i] + "\"/>\n";
            out += "<text x=\"" + num(lx + 16) + "\" y=\"" + num(ly + 1) +
                   "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#212529\">" +
                   escape(hm.legend_labels[i]) + "</text>\n";
            lx += 22 + 8.0 * static_cast<double>(hm.legend_labels[i].size());
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace tcelldyn::svg
