#include "liveness/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace liveness {

int64_t shape_numel(const std::vector<int>& shape) {
    int64_t n = 1;
    for (int d : shape) {
        require(d > 0, "tensor: shape dims must be positive");
        n *= d;
    }
    return n;
}

Tensor::Tensor(std::vector<int> s) : shape(std::move(s)) {
    data.assign(static_cast<size_t>(shape_numel(shape)), 0.0);
}

Tensor Tensor::full(std::vector<int> s, double v) {
    Tensor t(std::move(s));
    t.fill(v);
    return t;
}

bool Tensor::all_finite() const {
    return std::all_of(data.begin(), data.end(),
                       [](double v) { return std::isfinite(v); });
}

void Tensor::fill(double v) { std::fill(data.begin(), data.end(), v); }

} // namespace liveness
