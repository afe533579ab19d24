#include "liveness/layers.hpp"

#include <algorithm>
#include <cmath>

#include "liveness/kernels.hpp"

namespace liveness {

namespace {

kernels::ConvShape conv_shape(const Tensor& x, const Tensor& w, int stride, int pad) {
    require(x.ndim() == 4, "conv2d: input must be {n,h,w,c}");
    require(w.ndim() == 4, "conv2d: weights must be {k,k,c_in,c_out}");
    require(w.dim(0) == w.dim(1), "conv2d: kernel must be square");
    require(w.dim(2) == x.dim(3), "conv2d: channel mismatch");
    require(stride >= 1 && pad >= 0, "conv2d: bad stride/pad");
    kernels::ConvShape s{x.dim(0), x.dim(1), x.dim(2), x.dim(3), w.dim(3), w.dim(0), stride, pad};
    require(s.out_h() >= 1 && s.out_w() >= 1, "conv2d: output would be empty");
    return s;
}

} // namespace

Tensor conv2d_forward(const Tensor& x, const Tensor& w, const Tensor& b, int stride, int pad) {
    const auto s = conv_shape(x, w, stride, pad);
    require(b.numel() == s.c_out, "conv2d: bias size mismatch");
    Tensor y({s.n, s.out_h(), s.out_w(), s.c_out});
    kernels::conv2d_forward(x.data.data(), w.data.data(), b.data.data(), y.data.data(), s);
    return y;
}

void conv2d_backward(const Tensor& x, const Tensor& w, const Tensor& gy, int stride, int pad,
                     Tensor& gx, Tensor& gw, Tensor& gb) {
    const auto s = conv_shape(x, w, stride, pad);
    require(gy.ndim() == 4 && gy.dim(0) == s.n && gy.dim(1) == s.out_h() &&
                gy.dim(2) == s.out_w() && gy.dim(3) == s.c_out,
            "conv2d: upstream grad shape mismatch");
    gx = Tensor(x.shape);
    gw = Tensor(w.shape);
    gb = Tensor({s.c_out});
    kernels::conv2d_backward_input(gy.data.data(), w.data.data(), gx.data.data(), s);
    kernels::conv2d_backward_params(x.data.data(), gy.data.data(), gw.data.data(), gb.data.data(), s);
}

Tensor dense_forward(const Tensor& x, const Tensor& w, const Tensor& b) {
    require(x.ndim() == 2 && w.ndim() == 2, "dense: x {n,in}, w {in,out}");
    require(x.dim(1) == w.dim(0), "dense: in-dim mismatch");
    require(b.numel() == w.dim(1), "dense: bias size mismatch");
    Tensor y({x.dim(0), w.dim(1)});
    kernels::dense_forward(x.data.data(), w.data.data(), b.data.data(), y.data.data(),
                           x.dim(0), x.dim(1), w.dim(1));
    return y;
}

void dense_backward(const Tensor& x, const Tensor& w, const Tensor& gy,
                    Tensor& gx, Tensor& gw, Tensor& gb) {
    require(gy.ndim() == 2 && gy.dim(0) == x.dim(0) && gy.dim(1) == w.dim(1),
            "dense: upstream grad shape mismatch");
    gx = Tensor(x.shape);
    gw = Tensor(w.shape);
    gb = Tensor({w.dim(1)});
    kernels::dense_backward_input(gy.data.data(), w.data.data(), gx.data.data(),
                                  x.dim(0), x.dim(1), w.dim(1));
    kernels::dense_backward_params(x.data.data(), gy.data.data(), gw.data.data(), gb.data.data(),
                                   x.dim(0), x.dim(1), w.dim(1));
}

Tensor relu_forward(const Tensor& x) {
    Tensor y(x.shape);
    for (int64_t i = 0; i < x.numel(); ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
    return y;
}

Tensor relu_backward(const Tensor& x, const Tensor& gy) {
    require(x.same_shape(gy), "relu: grad shape mismatch");
    Tensor gx(x.shape);
    for (int64_t i = 0; i < x.numel(); ++i) gx[i] = x[i] > 0.0 ? gy[i] : 0.0;
    return gx;
}

Tensor global_avg_pool_forward(const Tensor& x) {
    require(x.ndim() == 4, "gap: input must be {n,h,w,c}");
    const int n = x.dim(0), h = x.dim(1), w = x.dim(2), c = x.dim(3);
    Tensor y({n, c});
    const double inv = 1.0 / (static_cast<double>(h) * w);
    for (int i = 0; i < n; ++i) {
        for (int ch = 0; ch < c; ++ch) {
            double acc = 0.0;
            for (int r = 0; r < h; ++r)
                for (int col = 0; col < w; ++col) acc += x.at4(i, r, col, ch);
            y.at2(i, ch) = acc * inv;
        }
    }
    return y;
}

Tensor global_avg_pool_backward(const std::vector<int>& in_shape, const Tensor& gy) {
    require(in_shape.size() == 4, "gap: input shape must be {n,h,w,c}");
    const int n = in_shape[0], h = in_shape[1], w = in_shape[2], c = in_shape[3];
    require(gy.ndim() == 2 && gy.dim(0) == n && gy.dim(1) == c, "gap: grad shape mismatch");
    Tensor gx(in_shape);
    const double inv = 1.0 / (static_cast<double>(h) * w);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < h; ++r)
            for (int col = 0; col < w; ++col)
                for (int ch = 0; ch < c; ++ch) gx.at4(i, r, col, ch) = gy.at2(i, ch) * inv;
    return gx;
}

std::vector<double> softmax(std::span<const double> z) {
    require(!z.empty(), "softmax: empty input");
    double mx = z[0];
    for (double v : z) {
        require(std::isfinite(v), "softmax: non-finite input");
        mx = std::max(mx, v);
    }
    std::vector<double> p(z.size());
    double sum = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - mx);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

Tensor softmax_rows(const Tensor& logits) {
    require(logits.ndim() == 2, "softmax_rows: logits must be {n,k}");
    Tensor p(logits.shape);
    const int k = logits.dim(1);
    for (int i = 0; i < logits.dim(0); ++i) {
        auto row = softmax(std::span<const double>(logits.data.data() + logits.idx2(i, 0),
                                                   static_cast<size_t>(k)));
        std::copy(row.begin(), row.end(), p.data.begin() + logits.idx2(i, 0));
    }
    return p;
}

double cross_entropy_with_logits(const Tensor& logits, std::span<const int> labels,
                                 Tensor* grad_logits) {
    require(logits.ndim() == 2, "cross_entropy: logits must be {n,k}");
    const int n = logits.dim(0), k = logits.dim(1);
    require(static_cast<int>(labels.size()) == n, "cross_entropy: label count mismatch");
    require(n >= 1, "cross_entropy: empty batch");
    if (grad_logits) *grad_logits = Tensor(logits.shape);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        require(labels[i] >= 0 && labels[i] < k, "cross_entropy: label out of range");
        // log-sum-exp with max subtraction
        double mx = logits.at2(i, 0);
        for (int j = 1; j < k; ++j) mx = std::max(mx, logits.at2(i, j));
        double sum = 0.0;
        for (int j = 0; j < k; ++j) sum += std::exp(logits.at2(i, j) - mx);
        const double lse = mx + std::log(sum);
        total += lse - logits.at2(i, labels[i]);
        if (grad_logits) {
            for (int j = 0; j < k; ++j) {
                const double p = std::exp(logits.at2(i, j) - mx) / sum;
                grad_logits->at2(i, j) = (p - (j == labels[i] ? 1.0 : 0.0)) / n;
            }
        }
    }
    return total / n;
}

Tensor grl_backward(const Tensor& upstream_grad, double beta) {
    require(beta >= 0.0, "grl: beta must be nonnegative");
    Tensor g(upstream_grad.shape);
    for (int64_t i = 0; i < g.numel(); ++i) g[i] = -beta * upstream_grad[i];
    return g;
}

} // namespace liveness
