#include "liveness/model.hpp"

#include <cmath>

#include "liveness/layers.hpp"
#include "liveness/rng.hpp"

namespace liveness {

BinSet bin_values(int K) {
    require(K >= 1, "bin_values: K must be >= 1");
    BinSet bins;
    bins.K = K;
    bins.values.resize(static_cast<size_t>(K) + 1);
    bins.values[0] = 0.0;
    for (int i = 1; i < K; ++i) bins.values[static_cast<size_t>(i)] = static_cast<double>(i) / K;
    bins.values[static_cast<size_t>(K)] = 1.0;
    return bins;
}

double expected_score(std::span<const double> p, const BinSet& bins) {
    require(p.size() == bins.values.size(), "expected_score: probability/bin size mismatch");
    double rho = 0.0;
    for (size_t i = 0; i < p.size(); ++i) rho += bins.values[i] * p[i];
    return std::min(1.0, std::max(0.0, rho));
}

namespace {

std::string conv_w(int i) { return "enc.conv" + std::to_string(i + 1) + ".w"; }
std::string conv_b(int i) { return "enc.conv" + std::to_string(i + 1) + ".b"; }

Tensor uniform_init(std::vector<int> shape, int fan_in, Rng& rng) {
    Tensor t(std::move(shape));
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (int64_t i = 0; i < t.numel(); ++i) t[i] = rng.uniform_real(-bound, bound);
    return t;
}

void validate_config(const ModelConfig& cfg) {
    require(cfg.K >= 1, "model: K must be >= 1");
    require(cfg.num_domains >= 2, "model: need at least 2 domains");
    require(!cfg.encoder_channels.empty(), "model: encoder needs at least one block");
    require(cfg.in_channels >= 1 && cfg.domain_hidden >= 1, "model: bad widths");
    require(cfg.grl_beta >= 0.0, "model: beta must be nonnegative");
}

} // namespace

LivenessModel::LivenessModel(ModelConfig cfg, ParamSet params)
    : cfg_(std::move(cfg)), params_(std::move(params)), bins_(bin_values(cfg_.K)) {
    validate_config(cfg_);
    require(params_.all_finite(), "model: non-finite parameters");
}

LivenessModel LivenessModel::init(const ModelConfig& cfg) {
    validate_config(cfg);
    Rng rng(cfg.init_seed);
    ParamSet params;
    int c_in = cfg.in_channels;
    for (size_t i = 0; i < cfg.encoder_channels.size(); ++i) {
        const int c_out = cfg.encoder_channels[i];
        const int fan_in = cfg.kernel * cfg.kernel * c_in;
        params.add(conv_w(static_cast<int>(i)),
                   uniform_init({cfg.kernel, cfg.kernel, c_in, c_out}, fan_in, rng));
        params.add(conv_b(static_cast<int>(i)), Tensor({c_out}));
        c_in = c_out;
    }
    const int feat = cfg.encoder_channels.back();
    params.add("head.fc.w", uniform_init({feat, cfg.K + 1}, feat, rng));
    params.add("head.fc.b", Tensor({cfg.K + 1}));
    params.add("dom.fc1.w", uniform_init({feat, cfg.domain_hidden}, feat, rng));
    params.add("dom.fc1.b", Tensor({cfg.domain_hidden}));
    params.add("dom.fc2.w", uniform_init({cfg.domain_hidden, cfg.num_domains}, cfg.domain_hidden, rng));
    params.add("dom.fc2.b", Tensor({cfg.num_domains}));
    return LivenessModel(cfg, std::move(params));
}

Tensor model_features(const ModelConfig& cfg, const ParamSet& params, const Tensor& x) {
    require(x.ndim() == 4 && x.dim(3) == cfg.in_channels, "encode: input must be {n,h,w,c}");
    require(x.all_finite(), "encode: non-finite input");
    Tensor a = x;
    for (size_t i = 0; i < cfg.encoder_channels.size(); ++i) {
        const Tensor pre = conv2d_forward(a, params.at(conv_w(static_cast<int>(i))),
                                          params.at(conv_b(static_cast<int>(i))),
                                          cfg.stride, cfg.pad);
        a = relu_forward(pre);
    }
    return global_avg_pool_forward(a);
}

void LivenessModel::forward(const Tensor& x, ModelActivations& acts) const {
    require(x.ndim() == 4 && x.dim(3) == cfg_.in_channels, "forward: input must be {n,h,w,c}");
    acts.input = x;
    acts.conv_in.clear();
    acts.conv_pre.clear();
    Tensor a = x;
    for (size_t i = 0; i < cfg_.encoder_channels.size(); ++i) {
        acts.conv_in.push_back(a);
        Tensor pre = conv2d_forward(a, params_.at(conv_w(static_cast<int>(i))),
                                    params_.at(conv_b(static_cast<int>(i))),
                                    cfg_.stride, cfg_.pad);
        a = relu_forward(pre);
        acts.conv_pre.push_back(std::move(pre));
    }
    acts.features = global_avg_pool_forward(a);
    acts.head_logits = dense_forward(acts.features, params_.at("head.fc.w"), params_.at("head.fc.b"));
    acts.probs = softmax_rows(acts.head_logits);
    const int n = x.dim(0);
    acts.rho.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        acts.rho[static_cast<size_t>(j)] = expected_score(
            std::span<const double>(acts.probs.data.data() + acts.probs.idx2(j, 0),
                                    static_cast<size_t>(cfg_.K) + 1),
            bins_);
    }
    acts.dom_pre = dense_forward(acts.features, params_.at("dom.fc1.w"), params_.at("dom.fc1.b"));
    acts.dom_hidden = relu_forward(acts.dom_pre);
    acts.dom_logits = dense_forward(acts.dom_hidden, params_.at("dom.fc2.w"), params_.at("dom.fc2.b"));
}

LossBreakdown LivenessModel::backward(const ModelActivations& acts, std::span<const double> y_tilde,
                                      std::span<const int> domain_ids, double alpha,
                                      ParamSet& grads) const {
    const int n = acts.input.dim(0);
    require(static_cast<int>(y_tilde.size()) == n, "backward: supervision size mismatch");
    require(static_cast<int>(domain_ids.size()) == n, "backward: domain id size mismatch");
    require(alpha >= 0.0 && alpha <= 1.0, "backward: alpha must be in [0,1]");
    const int kp1 = cfg_.K + 1;

    LossBreakdown losses;
    for (int j = 0; j < n; ++j) {
        const double d = acts.rho[static_cast<size_t>(j)] - y_tilde[j];
        losses.mse += d * d;
    }
    losses.mse /= n;

    // liveness head: d total / d head_logits, already alpha-scaled
    Tensor g_head_logits({n, kp1});
    for (int j = 0; j < n; ++j) {
        const double rho = acts.rho[static_cast<size_t>(j)];
        const double g_rho = alpha * 2.0 * (rho - y_tilde[j]) / n;
        for (int i = 0; i < kp1; ++i) {
            const double p = acts.probs.at2(j, i);
            g_head_logits.at2(j, i) = g_rho * p * (bins_.values[static_cast<size_t>(i)] - rho);
        }
    }

    std::vector<int> labels(domain_ids.begin(), domain_ids.end());
    Tensor g_dom_logits;
    losses.adv = cross_entropy_with_logits(acts.dom_logits, labels, &g_dom_logits);
    const double adv_scale = 1.0 - alpha;
    for (int64_t i = 0; i < g_dom_logits.numel(); ++i) g_dom_logits[i] *= adv_scale;

    losses.total = alpha * losses.mse + adv_scale * losses.adv;

    grads = ParamSet();
    Tensor g_feat_head, g_head_w, g_head_b;
    dense_backward(acts.features, params_.at("head.fc.w"), g_head_logits,
                   g_feat_head, g_head_w, g_head_b);
    grads.add("head.fc.w", std::move(g_head_w));
    grads.add("head.fc.b", std::move(g_head_b));

    // domain branch; discriminator params train normally, the encoder sees
    // the reversed gradient
    Tensor g_dom_hidden, g_dom2_w, g_dom2_b;
    dense_backward(acts.dom_hidden, params_.at("dom.fc2.w"), g_dom_logits,
                   g_dom_hidden, g_dom2_w, g_dom2_b);
    grads.add("dom.fc2.w", std::move(g_dom2_w));
    grads.add("dom.fc2.b", std::move(g_dom2_b));
    const Tensor g_dom_pre = relu_backward(acts.dom_pre, g_dom_hidden);
    Tensor g_feat_dom, g_dom1_w, g_dom1_b;
    dense_backward(acts.features, params_.at("dom.fc1.w"), g_dom_pre,
                   g_feat_dom, g_dom1_w, g_dom1_b);
    grads.add("dom.fc1.w", std::move(g_dom1_w));
    grads.add("dom.fc1.b", std::move(g_dom1_b));

    Tensor g_feat = g_feat_head;
    const Tensor reversed = grl_backward(g_feat_dom, cfg_.grl_beta);
    for (int64_t i = 0; i < g_feat.numel(); ++i) g_feat[i] += reversed[i];

    // encoder stack
    const size_t blocks = cfg_.encoder_channels.size();
    Tensor g = global_avg_pool_backward(acts.conv_pre.back().shape, g_feat);
    for (size_t i = blocks; i-- > 0;) {
        const Tensor g_pre = relu_backward(acts.conv_pre[i], g);
        Tensor g_in, g_w, g_b;
        conv2d_backward(acts.conv_in[i], params_.at(conv_w(static_cast<int>(i))), g_pre,
                        cfg_.stride, cfg_.pad, g_in, g_w, g_b);
        grads.add(conv_w(static_cast<int>(i)), std::move(g_w));
        grads.add(conv_b(static_cast<int>(i)), std::move(g_b));
        g = std::move(g_in);
    }
    return losses;
}

std::vector<double> LivenessModel::encode(const Tensor& img) const {
    require(img.ndim() == 3 && img.dim(2) == cfg_.in_channels, "encode: image must be {h,w,c}");
    Tensor batch({1, img.dim(0), img.dim(1), img.dim(2)});
    batch.data = img.data;
    const Tensor feat = model_features(cfg_, params_, batch);
    return {feat.data.begin(), feat.data.end()};
}

std::vector<double> LivenessModel::liveness_probs(std::span<const double> feature) const {
    require(static_cast<int>(feature.size()) == feature_dim(), "liveness_probs: feature size mismatch");
    Tensor f({1, feature_dim()});
    std::copy(feature.begin(), feature.end(), f.data.begin());
    const Tensor logits = dense_forward(f, params_.at("head.fc.w"), params_.at("head.fc.b"));
    return softmax(std::span<const double>(logits.data.data(), logits.data.size()));
}

double LivenessModel::predict(const Tensor& img) const {
    const auto feature = encode(img);
    const auto probs = liveness_probs(feature);
    return expected_score(probs, bins_);
}

Tensor LivenessModel::encode_batch(const Tensor& x) const {
    return model_features(cfg_, params_, x);
}

Tensor LivenessModel::domain_logits(const Tensor& features) const {
    const Tensor hidden = relu_forward(
        dense_forward(features, params_.at("dom.fc1.w"), params_.at("dom.fc1.b")));
    return dense_forward(hidden, params_.at("dom.fc2.w"), params_.at("dom.fc2.b"));
}

std::vector<double> LivenessModel::predict_batch(const Tensor& x) const {
    const Tensor feat = encode_batch(x);
    const Tensor logits = dense_forward(feat, params_.at("head.fc.w"), params_.at("head.fc.b"));
    const Tensor probs = softmax_rows(logits);
    const int n = x.dim(0), kp1 = cfg_.K + 1;
    std::vector<double> rho(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        rho[static_cast<size_t>(j)] = expected_score(
            std::span<const double>(probs.data.data() + probs.idx2(j, 0), static_cast<size_t>(kp1)),
            bins_);
    }
    return rho;
}

double model_objective(const ModelConfig& cfg, const ParamSet& params, const Tensor& x,
                       std::span<const double> y_tilde, std::span<const int> domain_ids,
                       double alpha, double adv_weight) {
    const Tensor feat = model_features(cfg, params, x);
    const Tensor head_logits = dense_forward(feat, params.at("head.fc.w"), params.at("head.fc.b"));
    const Tensor probs = softmax_rows(head_logits);
    const BinSet bins = bin_values(cfg.K);
    const int n = x.dim(0);
    double mse = 0.0;
    for (int j = 0; j < n; ++j) {
        const double rho = expected_score(
            std::span<const double>(probs.data.data() + probs.idx2(j, 0),
                                    static_cast<size_t>(cfg.K) + 1),
            bins);
        const double d = rho - y_tilde[j];
        mse += d * d;
    }
    mse /= n;
    const Tensor hidden =
        relu_forward(dense_forward(feat, params.at("dom.fc1.w"), params.at("dom.fc1.b")));
    const Tensor dom_logits = dense_forward(hidden, params.at("dom.fc2.w"), params.at("dom.fc2.b"));
    std::vector<int> labels(domain_ids.begin(), domain_ids.end());
    const double adv = cross_entropy_with_logits(dom_logits, labels, nullptr);
    return alpha * mse + adv_weight * adv;
}

} // namespace liveness
