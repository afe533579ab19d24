#pragma once

#include <filesystem>

#include "liveness/rng.hpp"
#include "liveness/tensor.hpp"

namespace liveness {

// One dataset sample: HWC raster in [0,1], binary label (0.0 spoof,
// 1.0 real), integer domain id.
struct LabeledImage {
    Tensor image; // {h,w,3}
    double label = 0.0;
    int domain = 0;

    bool is_real() const { return label > 0.5; }
    int height() const { return image.dim(0); }
    int width() const { return image.dim(1); }
};

// Binary PPM (P6), maxval 255. Lossless round trip for values on the
// 1/255 grid, which is what the generator emits.
void save_ppm(const std::filesystem::path& path, const Tensor& img_hwc);
Tensor load_ppm(const std::filesystem::path& path);

// Snap to the 1/255 grid (what an 8-bit file stores).
Tensor quantize_u8(const Tensor& img_hwc);

Tensor hflip(const Tensor& img_hwc);
Tensor crop(const Tensor& img_hwc, int top, int left, int height, int width);

enum class AugmentMode { train, test };

// train: random horizontal flip (p=0.5) then random crop; test:
// deterministic center crop. Label and domain pass through untouched.
LabeledImage augment(const LabeledImage& sample, AugmentMode mode,
                     int crop_h, int crop_w, Rng& rng);

} // namespace liveness
