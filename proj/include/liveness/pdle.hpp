#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "liveness/image.hpp"
#include "liveness/rng.hpp"

namespace liveness {

// Patch exchange between opposite-labeled images with discretized
// supervision: lambda = u/K picks the nominal exchanged fraction, a random
// rectangle realizes it, and the label is the exact real-pixel fraction of
// the result. Pixels are copied, never blended.

struct PdleConfig {
    int K = 10;            // discretization level, lambda in {1/K,...,1}
    double p_apply = 0.5;  // probability an anchor is exchanged
    uint64_t rng_seed = 1;
};

struct Box {
    int top = 0, left = 0, height = 0, width = 0;
};

struct ExchangeRecord {
    double lambda_nominal = 0.0; // u/K
    int u = 0;
    Box box;
    double lambda_effective = 0.0; // exact box-area fraction
    bool anchor_is_real = false;
    double y_tilde = 0.0;
};

struct EncodedSample {
    Tensor image;
    double y_tilde = 0.0;
    int domain = 0;
    std::optional<ExchangeRecord> record; // set iff the anchor was exchanged
};

// u uniform on {1..K}, lambda = u/K
std::pair<int, double> sample_lambda(int K, Rng& rng);

// Rectangle with side fractions ~ sqrt(lambda), fully inside the image.
// Returns the box and its exact area fraction (h*w)/(H*W).
std::pair<Box, double> make_mask(int H, int W, double lambda, Rng& rng);

// Pixels inside the box come from b, outside from a. Requires opposite
// labels and identical shapes. y_tilde is computed from integer pixel
// counts so it equals the exact real-pixel fraction of the output.
std::pair<Tensor, double> exchange(const LabeledImage& a, const LabeledImage& b, const Box& box);

// Uniform sampler over the images of one class, drawn from the whole
// training set.
class OppositePool {
public:
    explicit OppositePool(std::span<const LabeledImage> all);
    const LabeledImage& sample_opposite(double anchor_label, Rng& rng) const;
    size_t class_count(int label) const;

private:
    std::vector<const LabeledImage*> real_;
    std::vector<const LabeledImage*> spoof_;
};

// Each anchor is independently exchanged with probability p_apply against a
// partner drawn from the pool; unexchanged anchors pass through with their
// binary label. Deterministic given cfg and the rng state: sample i uses a
// child stream split from one base draw, so the result does not depend on
// evaluation order.
std::vector<EncodedSample> encode_batch(std::span<const LabeledImage> batch,
                                        const OppositePool& pool,
                                        const PdleConfig& cfg, Rng& rng);

} // namespace liveness
