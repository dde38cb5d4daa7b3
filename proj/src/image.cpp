#include "blindspot/image.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>

#include "blindspot/errors.hpp"

#ifdef BLINDSPOT_HAS_PNG
#include <png.h>
#endif

namespace blindspot {

namespace {

// Skips whitespace and '#' comments between PPM header tokens.
int next_header_int(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF) {
        if (std::isspace(c)) {
            c = in.get();
        } else if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF || !std::isdigit(c)) throw ParseError("malformed PPM header: " + path);
    int value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        c = in.get();
    }
    return value;
}

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return ext;
}

}  // namespace

Image read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open image: " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '6') throw ParseError("not a P6 PPM: " + path);
    const int w = next_header_int(in, path);
    const int h = next_header_int(in, path);
    const int maxval = next_header_int(in, path);
    if (w <= 0 || h <= 0 || maxval != 255) throw ParseError("unsupported PPM dimensions: " + path);
    Image img(w, h);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw ParseError("truncated PPM payload: " + path);
    return img;
}

void write_ppm(const Image& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write image: " + path);
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
}

#ifdef BLINDSPOT_HAS_PNG

bool png_supported() { return true; }

Image read_png(const std::string& path) {
    png_image pi{};
    pi.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&pi, path.c_str()))
        throw ParseError("cannot read PNG: " + path);
    pi.format = PNG_FORMAT_RGB;
    Image img(static_cast<int>(pi.width), static_cast<int>(pi.height));
    if (!png_image_finish_read(&pi, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&pi);
        throw ParseError("PNG decode failed: " + path);
    }
    return img;
}

void write_png(const Image& img, const std::string& path) {
    png_image pi{};
    pi.version = PNG_IMAGE_VERSION;
    pi.width = static_cast<png_uint_32>(img.width);
    pi.height = static_cast<png_uint_32>(img.height);
    pi.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&pi, path.c_str(), 0, img.pixels.data(), 0, nullptr))
        throw ParseError("PNG encode failed: " + path);
}

#else

bool png_supported() { return false; }

Image read_png(const std::string& path) {
    throw ParseError("PNG support not compiled in: " + path);
}

void write_png(const Image&, const std::string& path) {
    throw ParseError("PNG support not compiled in: " + path);
}

#endif

Image read_image(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "ppm") return read_ppm(path);
    if (ext == "png") return read_png(path);
    throw ParseError("unsupported image extension: " + path);
}

void write_image(const Image& img, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "ppm") return write_ppm(img, path);
    if (ext == "png") return write_png(img, path);
    throw ParseError("unsupported image extension: " + path);
}

}  // namespace blindspot
