#include "oscwell/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "oscwell/error.hpp"

namespace oscwell {
namespace {

// Plain complex reciprocal; avoids the inf/nan bookkeeping of operator/,
// which is irrelevant for the well-conditioned pivots met here.
inline complex reciprocal(complex z) {
    const double d = z.real() * z.real() + z.imag() * z.imag();
    return {z.real() / d, -z.imag() / d};
}

}  // namespace

void Tridiagonal::apply(std::span<const complex> x, std::span<complex> out) const {
    const std::size_t n = size();
    if (n == 1) {
        out[0] = diag[0] * x[0];
        return;
    }
    out[0] = diag[0] * x[0] + upper[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = lower[i] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
    }
    out[n - 1] = lower[n - 1] * x[n - 2] + diag[n - 1] * x[n - 1];
}

void solve_tridiagonal(const Tridiagonal& a, std::span<const complex> rhs, std::span<complex> x,
                       std::span<complex> scratch) {
    const std::size_t n = a.size();
    auto pivot_error = [](std::size_t row) {
        return NumericalError("tridiagonal solve: zero pivot at row " + std::to_string(row));
    };

    complex pivot = a.diag[0];
    if (std::norm(pivot) == 0.0) {
        throw pivot_error(0);
    }
    complex inv = reciprocal(pivot);
    scratch[0] = a.upper[0] * inv;
    x[0] = rhs[0] * inv;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = a.diag[i] - a.lower[i] * scratch[i - 1];
        if (std::norm(pivot) == 0.0) {
            throw pivot_error(i);
        }
        inv = reciprocal(pivot);
        scratch[i] = a.upper[i] * inv;
        x[i] = (rhs[i] - a.lower[i] * x[i - 1]) * inv;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= scratch[i] * x[i + 1];
    }
}

}  // namespace oscwell
