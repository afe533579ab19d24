#pragma once

#include <span>

#include "liveness/tensor.hpp"

namespace liveness {

struct LossConfig {
    double alpha = 0.5; // weight of the score regression term
    double beta = 1.0;  // GRL coefficient
};

// (1/N) * sum (rho_j - y_j)^2
double mse_liveness(std::span<const double> rho, std::span<const double> y_tilde);

// Mean cross-entropy of domain logits {n,D} against domain ids.
double adv_domain_loss(const Tensor& domain_logits, std::span<const int> domain_ids);

// alpha*mse + (1-alpha)*adv
double total_loss(double l_mse, double l_adv, const LossConfig& cfg);

} // namespace liveness
