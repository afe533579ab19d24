#include "liveness/pdle.hpp"

#include <cmath>

namespace liveness {

std::pair<int, double> sample_lambda(int K, Rng& rng) {
    require(K >= 1, "sample_lambda: K must be >= 1");
    const int u = static_cast<int>(rng.uniform_int(1, K));
    return {u, static_cast<double>(u) / K};
}

std::pair<Box, double> make_mask(int H, int W, double lambda, Rng& rng) {
    require(H >= 1 && W >= 1, "make_mask: bad image size");
    require(lambda > 0.0 && lambda <= 1.0, "make_mask: lambda must be in (0,1]");
    const double side = std::sqrt(lambda);
    const int h = std::min(H, std::max(1, static_cast<int>(std::lround(H * side))));
    const int w = std::min(W, std::max(1, static_cast<int>(std::lround(W * side))));
    Box box;
    box.height = h;
    box.width = w;
    box.top = static_cast<int>(rng.uniform_int(0, H - h));
    box.left = static_cast<int>(rng.uniform_int(0, W - w));
    const double lambda_eff =
        static_cast<double>(static_cast<int64_t>(h) * w) / (static_cast<double>(H) * W);
    return {box, lambda_eff};
}

std::pair<Tensor, double> exchange(const LabeledImage& a, const LabeledImage& b, const Box& box) {
    require(a.image.same_shape(b.image), "exchange: image shape mismatch");
    require(a.image.ndim() == 3, "exchange: images must be {h,w,c}");
    require(a.label != b.label, "exchange: pair must have opposite labels");
    const int H = a.height(), W = a.width(), C = a.image.dim(2);
    require(box.top >= 0 && box.left >= 0 && box.height >= 1 && box.width >= 1 &&
                box.top + box.height <= H && box.left + box.width <= W,
            "exchange: box outside image");
    Tensor out = a.image;
    for (int r = box.top; r < box.top + box.height; ++r)
        for (int c = box.left; c < box.left + box.width; ++c)
            for (int ch = 0; ch < C; ++ch) out.at3(r, c, ch) = b.image.at3(r, c, ch);
    // exact integer pixel counts; the label is the real-pixel fraction
    const int64_t total = static_cast<int64_t>(H) * W;
    const int64_t inside = static_cast<int64_t>(box.height) * box.width;
    const int64_t real_pixels = a.is_real() ? total - inside : inside;
    const double y_tilde = static_cast<double>(real_pixels) / static_cast<double>(total);
    return {std::move(out), y_tilde};
}

OppositePool::OppositePool(std::span<const LabeledImage> all) {
    for (const auto& img : all) (img.is_real() ? real_ : spoof_).push_back(&img);
}

const LabeledImage& OppositePool::sample_opposite(double anchor_label, Rng& rng) const {
    const auto& pool = anchor_label > 0.5 ? spoof_ : real_;
    require(!pool.empty(), "OppositePool: no samples of the opposite class");
    return *pool[static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(pool.size()) - 1))];
}

size_t OppositePool::class_count(int label) const {
    return label == 1 ? real_.size() : spoof_.size();
}

std::vector<EncodedSample> encode_batch(std::span<const LabeledImage> batch,
                                        const OppositePool& pool,
                                        const PdleConfig& cfg, Rng& rng) {
    require(cfg.K >= 1, "encode_batch: K must be >= 1");
    require(cfg.p_apply >= 0.0 && cfg.p_apply <= 1.0, "encode_batch: p_apply must be in [0,1]");
    const uint64_t base = rng.next_u64();
    std::vector<EncodedSample> out(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
        Rng stream(splitmix64(base ^ splitmix64(i + 1)));
        const LabeledImage& anchor = batch[i];
        EncodedSample& enc = out[i];
        enc.domain = anchor.domain;
        if (cfg.p_apply > 0.0 && stream.bernoulli(cfg.p_apply)) {
            const auto [u, lambda] = sample_lambda(cfg.K, stream);
            const auto [box, lambda_eff] =
                make_mask(anchor.height(), anchor.width(), lambda, stream);
            const LabeledImage& partner = pool.sample_opposite(anchor.label, stream);
            auto [img, y_tilde] = exchange(anchor, partner, box);
            enc.image = std::move(img);
            enc.y_tilde = y_tilde;
            enc.record = ExchangeRecord{lambda, u, box, lambda_eff, anchor.is_real(), y_tilde};
        } else {
            enc.image = anchor.image;
            enc.y_tilde = anchor.label;
        }
    }
    return out;
}

} // namespace liveness
