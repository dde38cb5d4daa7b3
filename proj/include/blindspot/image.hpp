#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace blindspot {

// 8-bit RGB raster, row-major, tightly packed.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 3

    Image() = default;
    Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t* at(int x, int y) {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }

    bool operator==(const Image&) const = default;
};

// Binary PPM (P6), the dependency-free interchange format.
Image read_ppm(const std::string& path);
void write_ppm(const Image& img, const std::string& path);

// PNG support is compiled in when libpng is available.
bool png_supported();
Image read_png(const std::string& path);
void write_png(const Image& img, const std::string& path);

// Dispatch on file extension (.ppm / .png).
Image read_image(const std::string& path);
void write_image(const Image& img, const std::string& path);

}  // namespace blindspot
