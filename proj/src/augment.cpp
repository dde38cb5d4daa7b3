#include "blindspot/augment.hpp"

#include <algorithm>
#include <cmath>

#include "blindspot/errors.hpp"
#include "blindspot/rng.hpp"

namespace blindspot {

void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v) {
    r /= 255.0;
    g /= 255.0;
    b /= 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    v = mx;
    s = mx > 0.0 ? d / mx : 0.0;
    if (d == 0.0) {
        h = 0.0;
    } else if (mx == r) {
        h = 60.0 * std::fmod((g - b) / d + 6.0, 6.0);
    } else if (mx == g) {
        h = 60.0 * ((b - r) / d + 2.0);
    } else {
        h = 60.0 * ((r - g) / d + 4.0);
    }
}

void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b) {
    h = std::fmod(std::fmod(h, 360.0) + 360.0, 360.0);
    const double c = v * s;
    const double hp = h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double rp = 0, gp = 0, bp = 0;
    if (hp < 1)      { rp = c; gp = x; }
    else if (hp < 2) { rp = x; gp = c; }
    else if (hp < 3) { gp = c; bp = x; }
    else if (hp < 4) { gp = x; bp = c; }
    else if (hp < 5) { rp = x; bp = c; }
    else             { rp = c; bp = x; }
    const double m = v - c;
    r = (rp + m) * 255.0;
    g = (gp + m) * 255.0;
    b = (bp + m) * 255.0;
}

namespace {

std::uint8_t clamp_u8(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
}

double sample_bilinear(const Image& img, double sx, double sy, int c) {
    sx = std::clamp(sx, 0.0, static_cast<double>(img.width - 1));
    sy = std::clamp(sy, 0.0, static_cast<double>(img.height - 1));
    const int x0 = static_cast<int>(sx);
    const int y0 = static_cast<int>(sy);
    const int x1 = std::min(x0 + 1, img.width - 1);
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fx = sx - x0;
    const double fy = sy - y0;
    const double v00 = img.at(x0, y0)[c];
    const double v10 = img.at(x1, y0)[c];
    const double v01 = img.at(x0, y1)[c];
    const double v11 = img.at(x1, y1)[c];
    return (v00 * (1 - fx) + v10 * fx) * (1 - fy) + (v01 * (1 - fx) + v11 * fx) * fy;
}

Image gaussian_blur(const Image& img, double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    if (radius < 1) return img;
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[static_cast<std::size_t>(i + radius)] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        sum += kernel[static_cast<std::size_t>(i + radius)];
    }
    for (double& k : kernel) k /= sum;

    Image horiz(img.width, img.height);
    std::vector<double> tmp(static_cast<std::size_t>(img.width) * img.height * 3);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    const int xx = std::clamp(x + i, 0, img.width - 1);
                    acc += kernel[static_cast<std::size_t>(i + radius)] * img.at(xx, y)[c];
                }
                tmp[(static_cast<std::size_t>(y) * img.width + x) * 3 + static_cast<std::size_t>(c)] = acc;
            }
    Image out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int i = -radius; i <= radius; ++i) {
                    const int yy = std::clamp(y + i, 0, img.height - 1);
                    acc += kernel[static_cast<std::size_t>(i + radius)] *
                           tmp[(static_cast<std::size_t>(yy) * img.width + x) * 3 + static_cast<std::size_t>(c)];
                }
                out.at(x, y)[c] = clamp_u8(acc);
            }
    return out;
}

}  // namespace

std::pair<Image, ImageAnnotation> augment(const Image& image, const ImageAnnotation& annot,
                                          const AugmentationParams& params) {
    if (image.width != annot.width || image.height != annot.height)
        throw ConfigError("raster dimensions do not match annotation");

    Rng rng(params.seed);
    const double zoom_u = rng.uniform(params.zoom.lo, params.zoom.hi);
    const double crop_frac = std::clamp(1.0 - zoom_u, 1e-3, 1.0);
    const double crop_w = crop_frac * image.width;
    const double crop_h = crop_frac * image.height;
    const double ox = rng.uniform(0.0, image.width - crop_w);
    const double oy = rng.uniform(0.0, image.height - crop_h);
    const double hue = rng.uniform(params.hue_shift.lo, params.hue_shift.hi);
    const double sat_mul = 1.0 + rng.uniform(params.saturation.lo, params.saturation.hi);
    const double bright_mul = 1.0 + rng.uniform(params.brightness.lo, params.brightness.hi);
    const double sigma = rng.uniform(params.blur_sigma.lo, params.blur_sigma.hi);
    const double noise_q = rng.uniform(params.noise_fraction.lo, params.noise_fraction.hi);

    Image out = image;
    ImageAnnotation out_annot = annot;
    out_annot.boxes.clear();

    // zoom-crop + resize back
    if (zoom_u > 0.0) {
        Image cropped(image.width, image.height);
        for (int y = 0; y < image.height; ++y)
            for (int x = 0; x < image.width; ++x)
                for (int c = 0; c < 3; ++c) {
                    const double sx = ox + (x + 0.5) * crop_w / image.width - 0.5;
                    const double sy = oy + (y + 0.5) * crop_h / image.height - 0.5;
                    cropped.at(x, y)[c] = clamp_u8(sample_bilinear(image, sx, sy, c));
                }
        out = std::move(cropped);
        for (const BoundingBox& b : annot.boxes) {
            BoundingBox clipped{std::max(b.x_min, ox), std::max(b.y_min, oy),
                                std::min(b.x_max, ox + crop_w), std::min(b.y_max, oy + crop_h)};
            if (!clipped.valid() || clipped.area() < 0.25 * b.area()) continue;
            out_annot.boxes.push_back({(clipped.x_min - ox) * image.width / crop_w,
                                       (clipped.y_min - oy) * image.height / crop_h,
                                       (clipped.x_max - ox) * image.width / crop_w,
                                       (clipped.y_max - oy) * image.height / crop_h});
        }
    } else {
        out_annot.boxes = annot.boxes;
    }

    // photometric pass
    if (hue != 0.0 || sat_mul != 1.0 || bright_mul != 1.0) {
        for (int y = 0; y < out.height; ++y)
            for (int x = 0; x < out.width; ++x) {
                std::uint8_t* px = out.at(x, y);
                double h, s, v;
                rgb_to_hsv(px[0], px[1], px[2], h, s, v);
                h += hue;
                s = std::clamp(s * sat_mul, 0.0, 1.0);
                v = std::clamp(v * bright_mul, 0.0, 1.0);
                double r, g, b;
                hsv_to_rgb(h, s, v, r, g, b);
                px[0] = clamp_u8(r);
                px[1] = clamp_u8(g);
                px[2] = clamp_u8(b);
            }
    }

    if (sigma > 0.0) out = gaussian_blur(out, sigma);

    if (noise_q > 0.0) {
        const std::size_t total = static_cast<std::size_t>(out.width) * out.height;
        const std::size_t count = static_cast<std::size_t>(std::llround(noise_q * static_cast<double>(total)));
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t idx = rng.bounded(total);
            const std::uint8_t v = rng.bernoulli(0.5) ? 255 : 0;
            std::uint8_t* px = out.pixels.data() + idx * 3;
            px[0] = px[1] = px[2] = v;
        }
    }

    // final clip, paranoia against float drift at the borders
    for (BoundingBox& b : out_annot.boxes) {
        b.x_min = std::clamp(b.x_min, 0.0, static_cast<double>(out.width));
        b.x_max = std::clamp(b.x_max, 0.0, static_cast<double>(out.width));
        b.y_min = std::clamp(b.y_min, 0.0, static_cast<double>(out.height));
        b.y_max = std::clamp(b.y_max, 0.0, static_cast<double>(out.height));
    }
    return {std::move(out), std::move(out_annot)};
}

std::vector<AugmentedItem> triple_dataset(const std::vector<ImageAnnotation>& items,
                                          const std::vector<Image>& images,
                                          const AugmentationParams& params_template,
                                          std::uint64_t seed) {
    if (items.size() != images.size()) throw ConfigError("items/images count mismatch");
    std::vector<AugmentedItem> out;
    out.reserve(items.size() * 3);
    for (std::size_t i = 0; i < items.size(); ++i) {
        out.push_back({items[i], images[i]});
        for (int variant = 1; variant <= 2; ++variant) {
            AugmentationParams p = params_template;
            p.seed = mix_seed(seed, hash64(items[i].image_id) + static_cast<std::uint64_t>(variant));
            auto [img, annot] = augment(images[i], items[i], p);
            annot.image_id = items[i].image_id + "_aug" + std::to_string(variant);
            out.push_back({std::move(annot), std::move(img)});
        }
    }
    return out;
}

}  // namespace blindspot
