#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "qubism/kernels.hpp"
#include "qubism/qmap.hpp"

namespace qubism {

using kernels::Rgb;

enum class ColorMode { full, phase_only };

ColorMode parse_color_mode(const std::string &name);

struct ColorSpec {
    ColorMode mode = ColorMode::full;
    double gamma = 1.0;
    double zero_threshold = 1e-12; // relative to max modulus, phase_only mode

    // Throws RangeError unless gamma is finite and positive.
    void validate() const;
};

/// 8-bit RGB raster, row-major from the top-left pixel.
struct RasterImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Rgb> pixels;

    RasterImage() = default;
    RasterImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h) {}

    Rgb &at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    const Rgb &at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

// Saturation carries the relative modulus t = (|a| / max_mod)^gamma and the
// hue is arg(a) * 120 deg / pi, so positive reals are red and negative reals
// green. Zero is white.
Rgb amplitude_to_rgb(cplx a, double max_mod, const ColorSpec &spec);

// Largest modulus in the image, the colour normalization.
double max_modulus(std::span<const cplx> values);

// Each cell becomes a px_per_cell square block.
RasterImage render_grid(const PlotImage &img, int px_per_cell, const ColorSpec &spec);

// `resolution` pixels across the base of the root triangle; the height is
// half that. 2x2 samples per pixel are averaged. Pixels outside are white.
RasterImage render_triangular(const PlotImage &img, int resolution, const ColorSpec &spec);

// Binary P6 with a "P6\n<w> <h>\n255\n" header.
void write_ppm(const RasterImage &img, std::ostream &out);
void write_ppm(const RasterImage &img, const std::filesystem::path &path);

} // namespace qubism
