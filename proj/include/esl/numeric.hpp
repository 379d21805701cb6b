#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

namespace esl {

/// Selects the serial reference loop or the OpenMP kernel for data-parallel
/// reductions. Both produce bit-identical results.
enum class Execution { serial, parallel };

/// Floating-point comparison convention: |a - b| <= atol + rtol * magnitude.
struct Tolerance {
    double atol = 1e-9;
    double rtol = 1e-9;

    [[nodiscard]] double slack(double magnitude) const { return atol + rtol * std::abs(magnitude); }

    /// lhs <= rhs up to the slack at the given magnitude.
    [[nodiscard]] bool le(double lhs, double rhs, double magnitude) const
    {
        return lhs <= rhs + slack(magnitude);
    }
};

/// Pairwise (cascade) summation with a fixed split order.
[[nodiscard]] inline double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

} // namespace esl
