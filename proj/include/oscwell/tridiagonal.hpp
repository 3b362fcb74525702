#pragma once

#include <complex>
#include <span>
#include <vector>

namespace oscwell {

using complex = std::complex<double>;

/// Complex tridiagonal matrix in band storage. Row i holds
/// lower[i] (column i-1), diag[i] and upper[i] (column i+1); lower[0] and
/// upper[n-1] are ignored.
struct Tridiagonal {
    std::vector<complex> lower;
    std::vector<complex> diag;
    std::vector<complex> upper;

    Tridiagonal() = default;
    explicit Tridiagonal(std::size_t n) : lower(n), diag(n), upper(n) {}

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

    /// out = A x
    void apply(std::span<const complex> x, std::span<complex> out) const;
};

/// Thomas elimination without pivoting. Stable for the Crank-Nicolson
/// matrices used here, whose Hermitian part is the identity. `scratch` must
/// hold n entries. x and rhs may alias.
///
/// Throws NumericalError on a vanishing pivot.
void solve_tridiagonal(const Tridiagonal& a, std::span<const complex> rhs, std::span<complex> x,
                       std::span<complex> scratch);

}  // namespace oscwell
