#include "liveness/params.hpp"

namespace liveness {

Tensor& ParamSet::add(const std::string& name, Tensor t) {
    require(items_.find(name) == items_.end(), "ParamSet: duplicate name " + name);
    return items_.emplace(name, std::move(t)).first->second;
}

Tensor& ParamSet::at(const std::string& name) {
    auto it = items_.find(name);
    require(it != items_.end(), "ParamSet: unknown name " + name);
    return it->second;
}

const Tensor& ParamSet::at(const std::string& name) const {
    auto it = items_.find(name);
    require(it != items_.end(), "ParamSet: unknown name " + name);
    return it->second;
}

int64_t ParamSet::total_elems() const {
    int64_t n = 0;
    for (const auto& [name, t] : items_) n += t.numel();
    return n;
}

bool ParamSet::all_finite() const {
    for (const auto& [name, t] : items_)
        if (!t.all_finite()) return false;
    return true;
}

} // namespace liveness
