#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace canpinn {

using ScalarMap = std::function<double(std::span<const double>)>;

/// Worst discrepancy between a supplied gradient and central finite
/// differences of the map. Entries where the reference derivative is too
/// small for a meaningful ratio are compared absolutely instead and flagged.
struct FiniteDiffReport {
    double max_error = 0.0;
    std::size_t worst_index = 0;
    bool absolute_fallback = false;
};

std::vector<double> finite_diff_gradient(const ScalarMap& f, std::span<const double> point, double step);

FiniteDiffReport finite_diff_check(const ScalarMap& f, std::span<const double> point, double step,
                                   std::span<const double> gradient);

} // namespace canpinn
