#pragma once

#include <functional>
#include <string>

#include "liveness/params.hpp"

namespace liveness {

struct GradCheckResult {
    double max_rel_err = 0.0;
    std::string worst_param;
    int64_t worst_index = -1;
    double analytic = 0.0;
    double numeric = 0.0;
};

// Central-difference check of `analytic` against f evaluated around `point`.
// Per element: h = epsilon * max(1, |theta|), and the reported relative
// error is |analytic - numeric| / max(1e-8, |analytic| + |numeric|).
GradCheckResult grad_check(const std::function<double(const ParamSet&)>& f,
                           const ParamSet& point, const ParamSet& analytic,
                           double epsilon);

} // namespace liveness
