#pragma once

#include <map>
#include <string>

#include "liveness/tensor.hpp"

namespace liveness {

// Named parameter tensors. Iteration order is name order, which everything
// downstream (optimizer, checkpoints, grad check) relies on for determinism.
class ParamSet {
public:
    Tensor& add(const std::string& name, Tensor t);
    Tensor& at(const std::string& name);
    const Tensor& at(const std::string& name) const;
    bool contains(const std::string& name) const { return items_.count(name) > 0; }

    size_t count() const { return items_.size(); }
    int64_t total_elems() const;
    bool all_finite() const;

    auto begin() { return items_.begin(); }
    auto end() { return items_.end(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

private:
    std::map<std::string, Tensor> items_;
};

} // namespace liveness
