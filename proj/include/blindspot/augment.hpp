#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blindspot/image.hpp"
#include "blindspot/voc.hpp"

namespace blindspot {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Interval&) const = default;
};

// Magnitude ranges for each augmentation stage; a concrete value is drawn
// uniformly from each closed interval under the seeded generator.
struct AugmentationParams {
    Interval zoom{0.0, 0.31};          // crop fraction
    Interval hue_shift{-25.0, 25.0};   // degrees
    Interval saturation{-0.22, 0.22};  // multiplicative fraction
    Interval brightness{-0.13, 0.13};  // multiplicative fraction
    Interval blur_sigma{0.0, 0.125};   // Gaussian sigma, pixels
    Interval noise_fraction{0.0, 0.02};  // salt-and-pepper pixel fraction
    std::uint64_t seed = 0;

    static AugmentationParams identity() {
        AugmentationParams p;
        p.zoom = p.hue_shift = p.saturation = p.brightness = p.blur_sigma = p.noise_fraction = {0.0, 0.0};
        return p;
    }
};

// Applies zoom-crop, hue shift, saturation, brightness, Gaussian blur and
// salt-and-pepper noise in that fixed order. Boxes are remapped through the
// crop, clipped, and dropped when less than 25% of their area survives.
// Output dimensions equal input dimensions.
std::pair<Image, ImageAnnotation> augment(const Image& image, const ImageAnnotation& annot,
                                          const AugmentationParams& params);

struct AugmentedItem {
    ImageAnnotation annot;
    Image image;
};

// For each original, emits the original plus exactly two augmented variants
// with per-item derived seeds; output count = 3x input count. Variants get
// image ids "<id>_aug1" / "<id>_aug2".
std::vector<AugmentedItem> triple_dataset(const std::vector<ImageAnnotation>& items,
                                          const std::vector<Image>& images,
                                          const AugmentationParams& params_template,
                                          std::uint64_t seed);

// RGB <-> HSV on [0,255] channels; hue in degrees [0,360).
void rgb_to_hsv(double r, double g, double b, double& h, double& s, double& v);
void hsv_to_rgb(double h, double s, double v, double& r, double& g, double& b);

}  // namespace blindspot
