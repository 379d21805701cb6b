#pragma once

// Max-reductions over index ranges. The serial loop is the reference; the
// OpenMP kernel keeps a per-thread best and merges under a total order
// (value, then smallest site), so both return the same result bit for bit.

#include "esl/error.hpp"
#include "esl/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <vector>

#include <omp.h>

namespace esl::kernels {

/// One evaluated site: its defect value, the largest |function value| seen
/// while computing it, and a comparable site key for tie-breaking.
template <class Site>
struct Sample {
    double value = 0.0;
    double magnitude = 0.0;
    Site site{};
};

template <class Site>
struct Best {
    std::optional<Sample<Site>> top;
    double magnitude = 0.0;

    void offer(const Sample<Site>& s)
    {
        magnitude = std::max(magnitude, s.magnitude);
        if (!top || s.value > top->value || (s.value == top->value && s.site < top->site)) top = s;
    }
    void merge(const Best& other)
    {
        magnitude = std::max(magnitude, other.magnitude);
        if (other.top) offer(*other.top);
    }
};

namespace detail {

template <class Site>
void check_finite(const Sample<Site>& s)
{
    if (!std::isfinite(s.value)) throw NumericError("non-finite defect encountered");
}

} // namespace detail

/// Serial reference. `eval(i)` returns a Sample; `keep`, when non-null,
/// receives every sample in index order.
template <class Site, class Eval>
Best<Site> max_reduce_serial(std::size_t n, Eval&& eval, std::vector<Sample<Site>>* keep = nullptr)
{
    Best<Site> best;
    if (keep) keep->resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Sample<Site> s = eval(i);
        detail::check_finite(s);
        best.offer(s);
        if (keep) (*keep)[i] = s;
    }
    return best;
}

/// OpenMP kernel with the same contract. An exception thrown by `eval` is
/// rethrown after the loop; when several indices fail, the lowest index wins,
/// matching the serial loop.
template <class Site, class Eval>
Best<Site> max_reduce_parallel(std::size_t n, Eval&& eval, std::vector<Sample<Site>>* keep = nullptr)
{
    Best<Site> best;
    if (keep) keep->resize(n);
    std::exception_ptr failure;
    std::size_t failed_at = std::numeric_limits<std::size_t>::max();
    const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel
    {
        Best<Site> local;
        std::exception_ptr local_failure;
        std::size_t local_failed_at = std::numeric_limits<std::size_t>::max();

#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t k = 0; k < count; ++k) {
            const auto i = static_cast<std::size_t>(k);
            if (i > local_failed_at) continue;
            try {
                const Sample<Site> s = eval(i);
                detail::check_finite(s);
                local.offer(s);
                if (keep) (*keep)[i] = s;
            } catch (...) {
                local_failure = std::current_exception();
                local_failed_at = i;
            }
        }

#pragma omp critical(esl_max_reduce)
        {
            best.merge(local);
            if (local_failure && local_failed_at < failed_at) {
                failure = local_failure;
                failed_at = local_failed_at;
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return best;
}

template <class Site, class Eval>
Best<Site> max_reduce(Execution exec, std::size_t n, Eval&& eval, std::vector<Sample<Site>>* keep = nullptr)
{
    if (exec == Execution::serial) return max_reduce_serial<Site>(n, eval, keep);
    return max_reduce_parallel<Site>(n, eval, keep);
}

/// max_i |values[i] - c * basis[i]|, serial reference.
[[nodiscard]] inline double max_abs_residual_serial(std::span<const double> values, std::span<const double> basis,
                                                    double c)
{
    double m = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) m = std::max(m, std::abs(values[i] - c * basis[i]));
    return m;
}

/// max_i |values[i] - c * basis[i]|, OpenMP kernel.
[[nodiscard]] inline double max_abs_residual_parallel(std::span<const double> values,
                                                      std::span<const double> basis, double c)
{
    double m = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for reduction(max : m) schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        m = std::max(m, std::abs(values[static_cast<std::size_t>(i)] - c * basis[static_cast<std::size_t>(i)]));
    }
    return m;
}

[[nodiscard]] inline double max_abs_residual(Execution exec, std::span<const double> values,
                                             std::span<const double> basis, double c)
{
    return exec == Execution::serial ? max_abs_residual_serial(values, basis, c)
                                     : max_abs_residual_parallel(values, basis, c);
}

/// out[i] = fn(i), filled in parallel; the output order is the index order.
template <class Fn>
void parallel_fill(std::vector<double>& out, Fn&& fn)
{
    std::exception_ptr failure;
    std::size_t failed_at = std::numeric_limits<std::size_t>::max();
    const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            out[i] = fn(i);
        } catch (...) {
#pragma omp critical(esl_parallel_fill)
            if (i < failed_at) {
                failed_at = i;
                failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace esl::kernels
