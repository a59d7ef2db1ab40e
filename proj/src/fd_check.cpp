#include "canpinn/fd_check.hpp"

#include <cmath>
#include <stdexcept>

namespace canpinn {

std::vector<double> finite_diff_gradient(const ScalarMap& f, std::span<const double> point, double step) {
    if (step <= 0.0) throw std::invalid_argument("finite_diff_gradient: step must be positive");
    std::vector<double> x(point.begin(), point.end());
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        x[i] = xi + step;
        const double fp = f(x);
        x[i] = xi - step;
        const double fm = f(x);
        x[i] = xi;
        g[i] = (fp - fm) / (2.0 * step);
    }
    return g;
}

FiniteDiffReport finite_diff_check(const ScalarMap& f, std::span<const double> point, double step,
                                   std::span<const double> gradient) {
    if (gradient.size() != point.size())
        throw std::invalid_argument("finite_diff_check: gradient size mismatch");
    const std::vector<double> fd = finite_diff_gradient(f, point, step);

    // Ratios against reference values this small are rounding noise.
    constexpr double kRatioFloor = 1e-10;

    FiniteDiffReport report;
    for (std::size_t i = 0; i < fd.size(); ++i) {
        const double diff = std::abs(gradient[i] - fd[i]);
        const bool absolute = std::abs(fd[i]) < kRatioFloor;
        const double err = absolute ? diff : diff / std::abs(fd[i]);
        if (err >= report.max_error) {
            report.max_error = err;
            report.worst_index = i;
            report.absolute_fallback = absolute;
        }
    }
    return report;
}

} // namespace canpinn
