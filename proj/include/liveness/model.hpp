#pragma once

#include <span>
#include <vector>

#include "liveness/params.hpp"
#include "liveness/tensor.hpp"

namespace liveness {

// Bin values of the score variable: {0, 1/K, ..., (K-1)/K, 1}.
struct BinSet {
    int K = 0;
    std::vector<double> values; // K+1 entries, strictly increasing, 0 to 1
};

BinSet bin_values(int K);

// E over the bins under p; clamped to [0,1] against rounding in the sum.
double expected_score(std::span<const double> p, const BinSet& bins);

struct ModelConfig {
    int in_channels = 3;
    std::vector<int> encoder_channels = {16, 32, 64}; // conv blocks, stride 2, pad 1, 3x3
    int kernel = 3;
    int stride = 2;
    int pad = 1;
    int K = 10;           // liveness head emits K+1 logits
    int num_domains = 2;  // D
    int domain_hidden = 32;
    double grl_beta = 1.0;
    int input_h = 64, input_w = 64; // expected crop size, checked at evaluation
    uint64_t init_seed = 1;
};

// Forward-pass caches kept for the hand-written backward.
struct ModelActivations {
    Tensor input;                 // {n,h,w,3}
    std::vector<Tensor> conv_in;  // input to each conv block
    std::vector<Tensor> conv_pre; // pre-ReLU conv outputs
    Tensor features;              // {n,F}
    Tensor head_logits;           // {n,K+1}
    Tensor probs;                 // {n,K+1}
    std::vector<double> rho;      // expected scores, length n
    Tensor dom_pre;               // {n,domain_hidden}, pre-ReLU
    Tensor dom_hidden;            // {n,domain_hidden}
    Tensor dom_logits;            // {n,D}
};

struct LossBreakdown {
    double mse = 0.0;
    double adv = 0.0;
    double total = 0.0;
};

// Encoder -> (K+1)-way liveness head -> expected score, plus the
// GRL-fronted domain discriminator branch.
class LivenessModel {
public:
    static LivenessModel init(const ModelConfig& cfg);
    LivenessModel(ModelConfig cfg, ParamSet params);

    const ModelConfig& config() const { return cfg_; }
    const BinSet& bins() const { return bins_; }
    ParamSet& params() { return params_; }
    const ParamSet& params() const { return params_; }
    int feature_dim() const { return cfg_.encoder_channels.back(); }

    // single image {h,w,3} -> feature vector
    std::vector<double> encode(const Tensor& img_hwc) const;
    // single feature -> probability vector over the K+1 bins
    std::vector<double> liveness_probs(std::span<const double> feature) const;
    // encode -> liveness_probs -> expected_score
    double predict(const Tensor& img_hwc) const;

    // batch paths
    Tensor encode_batch(const Tensor& x_nhwc) const;   // {n,F}
    Tensor domain_logits(const Tensor& features) const; // forward is beta-independent
    std::vector<double> predict_batch(const Tensor& x_nhwc) const;

    void forward(const Tensor& x_nhwc, ModelActivations& acts) const;

    // Gradients of the joint objective alpha*mse + (1-alpha)*adv. The
    // domain branch's contribution to the encoder passes through the GRL,
    // so encoder tensors receive alpha*d(mse) - beta*(1-alpha)*d(adv).
    LossBreakdown backward(const ModelActivations& acts, std::span<const double> y_tilde,
                           std::span<const int> domain_ids, double alpha, ParamSet& grads) const;

private:
    ModelConfig cfg_;
    ParamSet params_;
    BinSet bins_;
};

// Forward/objective as pure functions of an explicit ParamSet; these are
// what the finite-difference checks perturb. adv_weight lets a caller
// build the GRL-consistent surrogate (-beta*(1-alpha)) for encoder params.
Tensor model_features(const ModelConfig& cfg, const ParamSet& params, const Tensor& x_nhwc);
double model_objective(const ModelConfig& cfg, const ParamSet& params, const Tensor& x_nhwc,
                       std::span<const double> y_tilde, std::span<const int> domain_ids,
                       double alpha, double adv_weight);

} // namespace liveness
