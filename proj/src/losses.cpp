#include "liveness/losses.hpp"

#include <cmath>

#include "liveness/layers.hpp"

namespace liveness {

double mse_liveness(std::span<const double> rho, std::span<const double> y_tilde) {
    require(!rho.empty(), "mse_liveness: empty batch");
    require(rho.size() == y_tilde.size(), "mse_liveness: size mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < rho.size(); ++j) {
        require(std::isfinite(rho[j]) && std::isfinite(y_tilde[j]), "mse_liveness: non-finite value");
        const double d = rho[j] - y_tilde[j];
        acc += d * d;
    }
    return acc / static_cast<double>(rho.size());
}

double adv_domain_loss(const Tensor& domain_logits, std::span<const int> domain_ids) {
    return cross_entropy_with_logits(domain_logits, domain_ids, nullptr);
}

double total_loss(double l_mse, double l_adv, const LossConfig& cfg) {
    require(cfg.alpha >= 0.0 && cfg.alpha <= 1.0, "total_loss: alpha must be in [0,1]");
    require(std::isfinite(l_mse) && std::isfinite(l_adv), "total_loss: non-finite component");
    return cfg.alpha * l_mse + (1.0 - cfg.alpha) * l_adv;
}

} // namespace liveness
