#include "biasprobe/viz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace biasprobe::viz {

namespace {

std::string fmt6(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("svg: non-finite coordinate");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
    if (ec != std::errc{}) throw std::runtime_error("svg: number formatting failed");
    return std::string(buf, ptr);
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double left, right, top, bottom;  // plot-area pixel edges
    double inner_w() const { return right - left; }
    double inner_h() const { return bottom - top; }
};

Frame frame_for(const PlotOptions& options) {
    return {60.0, options.width - 25.0, 45.0, options.height - 45.0};
}

}  // namespace

std::string Rgb::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s = "#......";
    const std::uint8_t comps[3] = {r, g, b};
    for (int i = 0; i < 3; ++i) {
        s[1 + 2 * i] = digits[comps[i] >> 4];
        s[2 + 2 * i] = digits[comps[i] & 0xF];
    }
    return s;
}

ColorMap::ColorMap()
    : ColorMap({{0.0, Rgb{0, 0, 255}},
                {0.25, Rgb{0, 255, 255}},
                {0.5, Rgb{0, 255, 0}},
                {0.75, Rgb{255, 255, 0}},
                {1.0, Rgb{255, 0, 0}}}) {}

ColorMap::ColorMap(std::vector<std::pair<double, Rgb>> stops) : stops_(std::move(stops)) {
    if (stops_.size() < 2) throw std::invalid_argument("ColorMap: need >= 2 stops");
    if (stops_.front().first != 0.0 || stops_.back().first != 1.0)
        throw std::invalid_argument("ColorMap: stops must start at 0 and end at 1");
    for (std::size_t i = 1; i < stops_.size(); ++i)
        if (!(stops_[i - 1].first < stops_[i].first))
            throw std::invalid_argument("ColorMap: stop fractions must be strictly increasing");
}

Rgb ColorMap::at(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    for (std::size_t i = 1; i < stops_.size(); ++i) {
        if (t <= stops_[i].first) {
            const auto& [t0, c0] = stops_[i - 1];
            const auto& [t1, c1] = stops_[i];
            const double w = (t - t0) / (t1 - t0);
            auto mix = [w](std::uint8_t a, std::uint8_t b) {
                return static_cast<std::uint8_t>(std::lround(a + w * (b - a)));
            };
            return {mix(c0.r, c1.r), mix(c0.g, c1.g), mix(c0.b, c1.b)};
        }
    }
    return stops_.back().second;
}

SvgDocument::SvgDocument(double width, double height, std::string title)
    : width_(width), height_(height), title_(std::move(title)) {
    if (!(width > 0 && height > 0) || !std::isfinite(width) || !std::isfinite(height))
        throw std::invalid_argument("SvgDocument: bad dimensions");
}

void SvgDocument::add_line(double x1, double y1, double x2, double y2, const std::string& stroke,
                           double stroke_width) {
    elements_.push_back("<line x1=\"" + fmt6(x1) + "\" y1=\"" + fmt6(y1) + "\" x2=\"" + fmt6(x2) +
                        "\" y2=\"" + fmt6(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
                        fmt6(stroke_width) + "\"/>");
}

void SvgDocument::add_circle(double cx, double cy, double r, const std::string& fill) {
    elements_.push_back("<circle cx=\"" + fmt6(cx) + "\" cy=\"" + fmt6(cy) + "\" r=\"" + fmt6(r) +
                        "\" fill=\"" + fill + "\"/>");
    ++circles_;
}

void SvgDocument::add_text(double x, double y, const std::string& text, double font_size,
                           const std::string& anchor) {
    elements_.push_back("<text x=\"" + fmt6(x) + "\" y=\"" + fmt6(y) + "\" font-size=\"" +
                        fmt6(font_size) + "\" font-family=\"sans-serif\" text-anchor=\"" + anchor +
                        "\">" + escape_xml(text) + "</text>");
}

std::string SvgDocument::to_xml() const {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt6(width_) +
           "\" height=\"" + fmt6(height_) + "\" viewBox=\"0 0 " + fmt6(width_) + " " +
           fmt6(height_) + "\">\n";
    if (!title_.empty()) {
        out += "<title>" + escape_xml(title_) + "</title>\n";
        out += "<text x=\"" + fmt6(width_ / 2.0) +
               "\" y=\"20.000000\" font-size=\"14.000000\" font-family=\"sans-serif\" "
               "text-anchor=\"middle\">" +
               escape_xml(title_) + "</text>\n";
    }
    for (const auto& el : elements_) {
        out += el;
        out += '\n';
    }
    out += "</svg>\n";
    return out;
}

void SvgDocument::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_xml();
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// Shared fitness-to-color normalization: the minimum maps to colormap(0),
// the maximum to colormap(1); a constant set maps to colormap(0).
struct FitnessScale {
    double min = 0.0, max = 0.0;

    explicit FitnessScale(std::span<const double> fitnesses) {
        if (fitnesses.empty()) return;
        min = *std::min_element(fitnesses.begin(), fitnesses.end());
        max = *std::max_element(fitnesses.begin(), fitnesses.end());
    }

    double normalize(double f) const { return max > min ? (f - min) / (max - min) : 0.0; }
};

}  // namespace

SvgDocument parallel_coordinates_svg(std::span<const std::vector<double>> points,
                                     const objectives::SearchDomain& domain,
                                     std::span<const double> fitnesses, const ColorMap& colormap,
                                     const PlotOptions& options) {
    if (points.empty()) throw std::invalid_argument("parallel_coordinates_svg: no points");
    if (points.size() != fitnesses.size())
        throw std::invalid_argument("parallel_coordinates_svg: one fitness per point required");
    const std::size_t dims = domain.dimension();
    for (const auto& p : points)
        if (p.size() != dims)
            throw std::invalid_argument("parallel_coordinates_svg: dimension mismatch");

    SvgDocument doc(options.width, options.height, options.title);
    const Frame f = frame_for(options);
    auto axis_x = [&](std::size_t k) {
        return f.left + (static_cast<double>(k) + 0.5) * f.inner_w() / static_cast<double>(dims);
    };

    for (std::size_t k = 0; k < dims; ++k) {
        doc.add_line(axis_x(k), f.top, axis_x(k), f.bottom, "#888888", 0.5);
        doc.add_text(axis_x(k), f.bottom + 16.0, std::to_string(k + 1), 9.0);
    }

    const FitnessScale scale(fitnesses);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::string color = colormap.at(scale.normalize(fitnesses[i])).hex();
        for (std::size_t k = 0; k < dims; ++k) {
            const double t = (points[i][k] - domain.lower[k]) / domain.width(k);
            doc.add_circle(axis_x(k), f.bottom - t * f.inner_h(), 2.5, color);
        }
    }
    return doc;
}

SvgDocument evolution_plot_svg(std::span<const optim::RunTrace> traces, std::size_t dim,
                               const ColorMap& colormap, const PlotOptions& options) {
    if (traces.empty()) throw std::invalid_argument("evolution_plot_svg: no traces");
    const auto& domain_j = traces.front().config.at("domain");
    for (const auto& t : traces)
        if (t.config.at("domain") != domain_j || t.config.at("dim") != traces.front().config.at("dim"))
            throw std::invalid_argument("evolution_plot_svg: traces must share a configuration");
    const auto lower = domain_j.at("lower").get<std::vector<double>>();
    const auto upper = domain_j.at("upper").get<std::vector<double>>();
    if (dim >= lower.size()) throw std::invalid_argument("evolution_plot_svg: bad dimension");
    const double lo = lower[dim], hi = upper[dim];

    std::uint64_t max_evals = 1;
    std::vector<double> all_fitness;
    for (const auto& trace : traces)
        for (const auto& snap : trace.snapshots) {
            max_evals = std::max(max_evals, snap.evaluations_used);
            for (const auto& ind : snap.individuals) all_fitness.push_back(ind.fitness);
        }
    const FitnessScale scale(all_fitness);

    SvgDocument doc(options.width, options.height, options.title);
    const Frame f = frame_for(options);
    doc.add_line(f.left, f.top, f.left, f.bottom, "#888888", 0.5);
    doc.add_line(f.left, f.top, f.right, f.top, "#888888", 0.5);
    doc.add_text(f.left - 8.0, f.top + 4.0, "0", 9.0, "end");
    doc.add_text(f.left - 8.0, f.bottom + 4.0, std::to_string(max_evals), 9.0, "end");

    for (const auto& trace : traces)
        for (const auto& snap : trace.snapshots) {
            const double y = f.top + static_cast<double>(snap.evaluations_used) /
                                         static_cast<double>(max_evals) * f.inner_h();
            for (const auto& ind : snap.individuals) {
                if (dim >= ind.position.size())
                    throw std::invalid_argument("evolution_plot_svg: bad dimension");
                const double x = f.left + (ind.position[dim] - lo) / (hi - lo) * f.inner_w();
                doc.add_circle(x, y, 1.5, colormap.at(scale.normalize(ind.fitness)).hex());
            }
        }
    return doc;
}

SvgDocument scatter_svg(std::span<const std::pair<double, double>> pairs,
                        const PlotOptions& options) {
    SvgDocument doc(options.width, options.height, options.title);
    const Frame f = frame_for(options);
    doc.add_line(f.left, f.top, f.left, f.bottom, "#888888", 0.5);
    doc.add_line(f.left, f.bottom, f.right, f.bottom, "#888888", 0.5);
    doc.add_line(f.right, f.top, f.right, f.bottom, "#888888", 0.5);
    doc.add_line(f.left, f.top, f.right, f.top, "#888888", 0.5);
    for (const auto& [x, y] : pairs) {
        if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0))
            throw std::invalid_argument("scatter_svg: values must lie in [0,1]");
        doc.add_circle(f.left + x * f.inner_w(), f.bottom - y * f.inner_h(), 1.0, "#1f3fbf");
    }
    return doc;
}

SvgDocument pvalue_strip_svg(std::span<const std::pair<std::string, stats::BiasReport>> reports,
                             bool log_scale, const PlotOptions& options) {
    if (reports.empty()) throw std::invalid_argument("pvalue_strip_svg: no reports");

    SvgDocument doc(options.width, options.height, options.title);
    const Frame f = frame_for(options);
    const double log_floor = std::log10(kPValueFloor);  // -16

    auto y_for = [&](double p) {
        p = std::clamp(p, kPValueFloor, 1.0);
        if (log_scale) return f.top + std::log10(p) / log_floor * f.inner_h();
        return f.top + (1.0 - p) * f.inner_h();
    };

    if (log_scale) {
        for (int decade = 0; decade >= -16; decade -= 4) {
            const double y = f.top - static_cast<double>(decade) / 16.0 * f.inner_h();
            doc.add_line(f.left, y, f.right, y, "#dddddd", 0.5);
            doc.add_text(f.left - 8.0, y + 3.0, "1e" + std::to_string(decade), 9.0, "end");
        }
    } else {
        for (int i = 0; i <= 4; ++i) {
            const double p = static_cast<double>(i) / 4.0;
            doc.add_line(f.left, y_for(p), f.right, y_for(p), "#dddddd", 0.5);
            doc.add_text(f.left - 8.0, y_for(p) + 3.0, fmt6(p), 9.0, "end");
        }
    }

    const auto m = static_cast<double>(reports.size());
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const double x = f.left + (static_cast<double>(k) + 0.5) * f.inner_w() / m;
        doc.add_text(x, f.bottom + 16.0, reports[k].first, 9.0);
        for (const auto& ks : reports[k].second.per_dimension)
            doc.add_circle(x, y_for(ks.p_value), 3.0, "#c03030");
    }
    return doc;
}

}  // namespace biasprobe::viz
