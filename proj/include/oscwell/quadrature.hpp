#pragma once

#include <complex>
#include <functional>

namespace oscwell {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_intervals = 20000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration. Throws
/// NumericalError naming the worst subinterval when the tolerance cannot
/// be met within the interval budget.
[[nodiscard]] double integrate(const std::function<double(double)>& f, double a, double b,
                               const QuadratureOptions& opts = {});

[[nodiscard]] std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureOptions& opts = {});

}  // namespace oscwell
