#include "qubism/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "qubism/error.hpp"

namespace qubism {

ColorMode parse_color_mode(const std::string &name) {
    if (name == "full") return ColorMode::full;
    if (name == "phase" || name == "phase_only" || name == "phase-only") return ColorMode::phase_only;
    throw UsageError("unknown colour mode \"" + name + "\"");
}

void ColorSpec::validate() const {
    if (!std::isfinite(gamma) || gamma <= 0.0) throw RangeError("gamma must be finite and positive");
    if (!std::isfinite(zero_threshold) || zero_threshold < 0.0) throw RangeError("zero threshold must be >= 0");
}

namespace {

std::uint8_t to_byte(double v) {
    const double scaled = std::floor(255.0 * std::clamp(v, 0.0, 1.0) + 0.5);
    return static_cast<std::uint8_t>(scaled);
}

// HSV with V = 1.
Rgb hsv(double hue, double sat) {
    const double c = sat;
    const double hp = hue / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(hp) % 6) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
    }
    const double m = 1.0 - c;
    return {to_byte(r + m), to_byte(g + m), to_byte(b + m)};
}

std::vector<Rgb> cell_colors(std::span<const cplx> values, const ColorSpec &spec) {
    const double mx = max_modulus(values);
    std::vector<Rgb> out(values.size());
    const auto n = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = amplitude_to_rgb(values[static_cast<std::size_t>(i)], mx, spec);
    return out;
}

} // namespace

Rgb amplitude_to_rgb(cplx a, double max_mod, const ColorSpec &spec) {
    const double mod = std::abs(a);
    if (mod == 0.0 || !(max_mod > 0.0)) return {};
    double t = 1.0;
    if (spec.mode == ColorMode::phase_only) {
        if (mod <= spec.zero_threshold * max_mod) return {};
    } else {
        t = std::pow(std::min(mod / max_mod, 1.0), spec.gamma);
    }
    // Signed zero in the imaginary part must not flip arg(-1) to -pi.
    const double im = a.imag() == 0.0 ? 0.0 : a.imag();
    double hue = std::atan2(im, a.real()) * 120.0 / std::numbers::pi;
    hue = std::fmod(hue, 360.0);
    if (hue < 0.0) hue += 360.0;
    if (hue >= 360.0) hue = 0.0;
    return hsv(hue, t);
}

double max_modulus(std::span<const cplx> values) {
    double mx = 0.0;
    for (const auto &v : values) mx = std::max(mx, std::abs(v));
    return mx;
}

RasterImage render_grid(const PlotImage &img, int px_per_cell, const ColorSpec &spec) {
    spec.validate();
    if (!img.scheme.is_grid()) throw UsageError("render_grid needs a grid scheme");
    if (px_per_cell < 1) throw RangeError("px_per_cell must be >= 1");
    if (img.values.empty() || img.rows == 0 || img.cols == 0) throw UsageError("empty plot image");
    const auto colors = cell_colors(img.values, spec);
    const auto px = static_cast<std::size_t>(px_per_cell);
    RasterImage out(img.cols * px, img.rows * px);
    kernels::parallel::expand_cells(colors, img.rows, img.cols, px_per_cell, out.pixels);
    return out;
}

RasterImage render_triangular(const PlotImage &img, int resolution, const ColorSpec &spec) {
    spec.validate();
    if (img.scheme.kind() != SchemeKind::triangular) throw UsageError("render_triangular needs a triangular image");
    if (resolution < 2) throw RangeError("resolution must be >= 2");
    const auto colors = cell_colors(img.values, spec);
    const int n = img.scheme.num_sites();
    const auto width = static_cast<std::size_t>(resolution);
    const std::size_t height = (width + 1) / 2;
    RasterImage out(width, height);
    const double w = static_cast<double>(width), h = static_cast<double>(height);

    const auto rows = static_cast<std::int64_t>(height);
#pragma omp parallel for schedule(static)
    for (std::int64_t py = 0; py < rows; ++py) {
        for (std::size_t px = 0; px < width; ++px) {
            unsigned sum[3] = {0, 0, 0};
            for (int sy = 0; sy < 2; ++sy)
                for (int sx = 0; sx < 2; ++sx) {
                    const Point p{-1.0 + 2.0 * (static_cast<double>(px) + 0.25 + 0.5 * sx) / w,
                                  1.0 - (static_cast<double>(py) + 0.25 + 0.5 * sy) / h};
                    Rgb c;
                    if (const auto cell = locate_triangular(p, n)) c = colors[*cell];
                    sum[0] += c.r;
                    sum[1] += c.g;
                    sum[2] += c.b;
                }
            out.at(px, static_cast<std::size_t>(py)) = {static_cast<std::uint8_t>((sum[0] + 2) / 4),
                                                        static_cast<std::uint8_t>((sum[1] + 2) / 4),
                                                        static_cast<std::uint8_t>((sum[2] + 2) / 4)};
        }
    }
    return out;
}

void write_ppm(const RasterImage &img, std::ostream &out) {
    if (img.pixels.size() != img.width * img.height) throw DimensionError("raster size mismatch");
    out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
    std::vector<char> bytes;
    bytes.reserve(img.pixels.size() * 3);
    for (const auto &p : img.pixels) {
        bytes.push_back(static_cast<char>(p.r));
        bytes.push_back(static_cast<char>(p.g));
        bytes.push_back(static_cast<char>(p.b));
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("failed to write PPM data");
}

void write_ppm(const RasterImage &img, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_ppm(img, out);
    out.close();
    if (!out) throw Error("failed to write " + path.string());
}

} // namespace qubism
