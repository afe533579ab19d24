#include "liveness/image.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

namespace liveness {

void save_ppm(const std::filesystem::path& path, const Tensor& img) {
    require(img.ndim() == 3 && img.dim(2) == 3, "save_ppm: image must be {h,w,3}");
    const int h = img.dim(0), w = img.dim(1);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_ppm: cannot open " + path.string());
    out << "P6\n" << w << " " << h << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(w) * 3);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            for (int ch = 0; ch < 3; ++ch) {
                const double v = img.at3(r, c, ch);
                require(std::isfinite(v), "save_ppm: non-finite pixel");
                const double clamped = std::min(1.0, std::max(0.0, v));
                row[static_cast<size_t>(c) * 3 + ch] =
                    static_cast<unsigned char>(std::lround(clamped * 255.0));
            }
        }
        out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw std::runtime_error("save_ppm: write failed for " + path.string());
}

Tensor load_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_ppm: cannot open " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P6") throw std::runtime_error("load_ppm: not a P6 file: " + path.string());
    auto next_token = [&in, &path]() {
        // skip whitespace and '#' comments
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw std::runtime_error("load_ppm: truncated header: " + path.string());
    };
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w < 1 || h < 1 || maxval != 255)
        throw std::runtime_error("load_ppm: unsupported header in " + path.string());
    in.get(); // single whitespace after maxval
    std::vector<unsigned char> raw(static_cast<size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw std::runtime_error("load_ppm: truncated pixel data: " + path.string());
    Tensor img({h, w, 3});
    for (size_t i = 0; i < raw.size(); ++i) img[static_cast<int64_t>(i)] = raw[i] / 255.0;
    return img;
}

Tensor quantize_u8(const Tensor& img) {
    Tensor out(img.shape);
    for (int64_t i = 0; i < img.numel(); ++i) {
        const double clamped = std::min(1.0, std::max(0.0, img[i]));
        out[i] = std::lround(clamped * 255.0) / 255.0;
    }
    return out;
}

Tensor hflip(const Tensor& img) {
    require(img.ndim() == 3, "hflip: image must be {h,w,c}");
    const int h = img.dim(0), w = img.dim(1), c = img.dim(2);
    Tensor out(img.shape);
    for (int r = 0; r < h; ++r)
        for (int col = 0; col < w; ++col)
            for (int ch = 0; ch < c; ++ch) out.at3(r, col, ch) = img.at3(r, w - 1 - col, ch);
    return out;
}

Tensor crop(const Tensor& img, int top, int left, int height, int width) {
    require(img.ndim() == 3, "crop: image must be {h,w,c}");
    require(height >= 1 && width >= 1, "crop: empty crop");
    require(top >= 0 && left >= 0 && top + height <= img.dim(0) && left + width <= img.dim(1),
            "crop: window outside image");
    const int c = img.dim(2);
    Tensor out({height, width, c});
    for (int r = 0; r < height; ++r)
        for (int col = 0; col < width; ++col)
            for (int ch = 0; ch < c; ++ch) out.at3(r, col, ch) = img.at3(top + r, left + col, ch);
    return out;
}

LabeledImage augment(const LabeledImage& sample, AugmentMode mode,
                     int crop_h, int crop_w, Rng& rng) {
    const int h = sample.height(), w = sample.width();
    require(crop_h >= 1 && crop_w >= 1, "augment: bad crop size");
    require(crop_h <= h && crop_w <= w, "augment: crop larger than image");
    LabeledImage out;
    out.label = sample.label;
    out.domain = sample.domain;
    if (mode == AugmentMode::train) {
        const bool flip = rng.bernoulli(0.5);
        const int top = static_cast<int>(rng.uniform_int(0, h - crop_h));
        const int left = static_cast<int>(rng.uniform_int(0, w - crop_w));
        const Tensor& base = sample.image;
        out.image = flip ? crop(hflip(base), top, left, crop_h, crop_w)
                         : crop(base, top, left, crop_h, crop_w);
    } else {
        out.image = crop(sample.image, (h - crop_h) / 2, (w - crop_w) / 2, crop_h, crop_w);
    }
    return out;
}

} // namespace liveness
