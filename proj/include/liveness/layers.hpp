#pragma once

#include <span>
#include <vector>

#include "liveness/tensor.hpp"

namespace liveness {

// Fixed layer set with hand-derived backward passes. Inputs are validated,
// shapes are explicit, and there is no tape: callers invoke backward in
// reverse graph order themselves.

Tensor conv2d_forward(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad);
void conv2d_backward(const Tensor& x, const Tensor& w, const Tensor& gy, int stride, int pad,
                     Tensor& gx, Tensor& gw, Tensor& gb);

Tensor dense_forward(const Tensor& x, const Tensor& w, const Tensor& b);
void dense_backward(const Tensor& x, const Tensor& w, const Tensor& gy,
                    Tensor& gx, Tensor& gw, Tensor& gb);

Tensor relu_forward(const Tensor& x);
Tensor relu_backward(const Tensor& x, const Tensor& gy);

// {n,h,w,c} -> {n,c}
Tensor global_avg_pool_forward(const Tensor& x);
Tensor global_avg_pool_backward(const std::vector<int>& in_shape, const Tensor& gy);

// Numerically stable (max-subtracted) softmax over one logit vector.
std::vector<double> softmax(std::span<const double> z);
// Row-wise softmax over {n,k} logits.
Tensor softmax_rows(const Tensor& logits);

// Mean cross-entropy over the batch; if grad_logits is non-null it receives
// d(mean CE)/d(logits), shape {n,k}.
double cross_entropy_with_logits(const Tensor& logits, std::span<const int> labels,
                                 Tensor* grad_logits);

// Gradient reversal: forward is the identity, backward scales the upstream
// gradient by -beta.
Tensor grl_backward(const Tensor& upstream_grad, double beta);

} // namespace liveness
