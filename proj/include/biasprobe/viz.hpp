#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "biasprobe/bias_stats.hpp"
#include "biasprobe/objectives.hpp"
#include "biasprobe/optimizers.hpp"

namespace biasprobe::viz {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    std::string hex() const;
};

/// Piecewise-linear color gradient; stop fractions are sorted, starting at 0
/// and ending at 1.
class ColorMap {
public:
    ColorMap();  // default 5-stop blue -> cyan -> green -> yellow -> red
    explicit ColorMap(std::vector<std::pair<double, Rgb>> stops);

    Rgb at(double t) const;  // t clamped into [0, 1]
    const std::vector<std::pair<double, Rgb>>& stops() const { return stops_; }

private:
    std::vector<std::pair<double, Rgb>> stops_;
};

/// Minimal SVG 1.1 builder. Coordinates are formatted with fixed 6-decimal
/// precision so output is byte-stable; non-finite coordinates are rejected.
class SvgDocument {
public:
    SvgDocument(double width, double height, std::string title = {});

    void add_line(double x1, double y1, double x2, double y2, const std::string& stroke,
                  double stroke_width = 1.0);
    void add_circle(double cx, double cy, double r, const std::string& fill);
    void add_text(double x, double y, const std::string& text, double font_size = 11.0,
                  const std::string& anchor = "middle");

    double width() const { return width_; }
    double height() const { return height_; }
    std::size_t element_count() const { return elements_.size(); }
    std::size_t circle_count() const { return circles_; }
    const std::string& title() const { return title_; }

    std::string to_xml() const;
    void save(const std::string& path) const;

private:
    double width_, height_;
    std::string title_;
    std::vector<std::string> elements_;
    std::size_t circles_ = 0;
};

inline constexpr double kDefaultWidth = 900;
inline constexpr double kDefaultHeight = 600;
inline constexpr double kPValueFloor = 1e-16;  // p-values are clamped here for plotting

struct PlotOptions {
    double width = kDefaultWidth;
    double height = kDefaultHeight;
    std::string title;
};

/// One vertical axis per dimension; each point becomes one unconnected marker
/// per axis at its normalized coordinate height; marker color encodes the
/// point's fitness normalized over [min, max] of the supplied fitnesses.
/// Points at a dimension's lower bound sit exactly on the axis bottom pixel.
SvgDocument parallel_coordinates_svg(std::span<const std::vector<double>> points,
                                     const objectives::SearchDomain& domain,
                                     std::span<const double> fitnesses, const ColorMap& colormap,
                                     const PlotOptions& options = {});

/// Population evolution in one selected dimension: x is the coordinate value,
/// y is evaluations used (time runs downward), one dot per individual per
/// snapshot with fitness-colored markers; all traces are overlaid.
SvgDocument evolution_plot_svg(std::span<const optim::RunTrace> traces, std::size_t dim,
                               const ColorMap& colormap, const PlotOptions& options = {});

/// Unit-square scatter of (x, y) pairs; all values must lie in [0, 1].
SvgDocument scatter_svg(std::span<const std::pair<double, double>> pairs,
                        const PlotOptions& options = {});

/// One labeled column per report, one marker per dimension at its p-value
/// height. log_scale plots log10(p) with p clamped at kPValueFloor.
SvgDocument pvalue_strip_svg(std::span<const std::pair<std::string, stats::BiasReport>> reports,
                             bool log_scale = true, const PlotOptions& options = {});

}  // namespace biasprobe::viz
