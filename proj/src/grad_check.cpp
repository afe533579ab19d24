#include "liveness/grad_check.hpp"

#include <cmath>
#include <vector>

namespace liveness {

GradCheckResult grad_check(const std::function<double(const ParamSet&)>& f,
                           const ParamSet& point, const ParamSet& analytic,
                           double epsilon) {
    require(epsilon > 0.0, "grad_check: epsilon must be positive");
    GradCheckResult result;
    ParamSet work = point;
    for (auto& [name, tensor] : work) {
        const Tensor& grad = analytic.at(name);
        require(grad.same_shape(tensor), "grad_check: gradient shape mismatch for " + name);
        for (int64_t i = 0; i < tensor.numel(); ++i) {
            const double theta = tensor[i];
            const double h = epsilon * std::max(1.0, std::fabs(theta));
            tensor[i] = theta + h;
            const double fp = f(work);
            tensor[i] = theta - h;
            const double fm = f(work);
            tensor[i] = theta;
            require(std::isfinite(fp) && std::isfinite(fm), "grad_check: non-finite f");
            const double numeric = (fp - fm) / (2.0 * h);
            const double a = grad[i];
            const double err = std::fabs(a - numeric) / std::max(1e-8, std::fabs(a) + std::fabs(numeric));
            if (err > result.max_rel_err) {
                result.max_rel_err = err;
                result.worst_param = name;
                result.worst_index = i;
                result.analytic = a;
                result.numeric = numeric;
            }
        }
    }
    return result;
}

} // namespace liveness
