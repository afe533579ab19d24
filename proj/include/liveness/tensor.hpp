#pragma once

#include <cstdint>
#include <vector>

#include "liveness/common.hpp"

namespace liveness {

// Dense row-major tensor of doubles. Image batches are stored NHWC,
// single images HWC, dense weights {in,out}, conv weights {k,k,in,out}.
struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<int> s);

    static Tensor zeros(std::vector<int> s) { return Tensor(std::move(s)); }
    static Tensor full(std::vector<int> s, double v);

    int ndim() const { return static_cast<int>(shape.size()); }
    int dim(int i) const { return shape[static_cast<size_t>(i)]; }
    int64_t numel() const { return static_cast<int64_t>(data.size()); }

    double& operator[](int64_t i) { return data[static_cast<size_t>(i)]; }
    const double& operator[](int64_t i) const { return data[static_cast<size_t>(i)]; }

    // index helpers for the layouts above
    int64_t idx2(int a, int b) const {
        return static_cast<int64_t>(a) * dim(1) + b;
    }
    int64_t idx3(int a, int b, int c) const {
        return (static_cast<int64_t>(a) * dim(1) + b) * dim(2) + c;
    }
    int64_t idx4(int a, int b, int c, int d) const {
        return ((static_cast<int64_t>(a) * dim(1) + b) * dim(2) + c) * dim(3) + d;
    }
    double& at2(int a, int b) { return data[static_cast<size_t>(idx2(a, b))]; }
    double at2(int a, int b) const { return data[static_cast<size_t>(idx2(a, b))]; }
    double& at3(int a, int b, int c) { return data[static_cast<size_t>(idx3(a, b, c))]; }
    double at3(int a, int b, int c) const { return data[static_cast<size_t>(idx3(a, b, c))]; }
    double& at4(int a, int b, int c, int d) { return data[static_cast<size_t>(idx4(a, b, c, d))]; }
    double at4(int a, int b, int c, int d) const { return data[static_cast<size_t>(idx4(a, b, c, d))]; }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }
    bool all_finite() const;
    void fill(double v);
};

int64_t shape_numel(const std::vector<int>& shape);

} // namespace liveness
