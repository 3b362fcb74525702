#pragma once

// Spherical Bessel functions of the first kind for small orders, their
// positive zeros, and the eigenbasis of the static infinite spherical well
// (radius 1, hbar = m = 1).

#include <span>
#include <vector>

namespace oscwell {

class RadialGrid;

inline constexpr int max_angular_momentum = 3;
inline constexpr int default_basis_size = 12;

/// j_l(x) for l in [0, 3] and x >= 0.
///
/// Small arguments use the ascending power series; elsewhere the closed
/// forms for j_0 and j_1 are continued by the upward recurrence, which is
/// stable once x exceeds the order.
[[nodiscard]] double spherical_bessel_j(int l, double x);

/// d/dx j_l(x), from j_l' = j_{l-1} - (l+1)/x j_l (and j_0' = -j_1).
[[nodiscard]] double spherical_bessel_j_derivative(int l, double x);

/// n-th positive zero of j_l (n >= 1).
[[nodiscard]] double bessel_zero(int l, int n);

/// Static-well level x_{n,l}^2 / 2.
[[nodiscard]] double eigen_energy(int l, int n);

/// u_n(y) = N y j_l(x y) for one level, with the zero and N precomputed.
struct RadialEigenfunction {
    int l;
    double zero;
    double norm;

    [[nodiscard]] double operator()(double y) const;
    [[nodiscard]] double derivative(double y) const;
};

[[nodiscard]] RadialEigenfunction radial_eigenfunction(int l, int n);

/// Normalized reduced eigenfunction u_n(y) = N y j_l(x_{n,l} y) at one point,
/// with N = sqrt(2) / |j_{l+1}(x_{n,l})| fixing unit norm on (0, 1).
[[nodiscard]] double eigenfunction_u(int l, int n, double y);

/// du_n/dy at one point.
[[nodiscard]] double eigenfunction_u_derivative(int l, int n, double y);

/// Lowest `levels` static-well eigenstates of one angular momentum, sampled
/// on a radial grid.
class Eigenbasis {
public:
    Eigenbasis(int l, int levels, const RadialGrid& grid);

    [[nodiscard]] int l() const noexcept { return l_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(zeros_.size()); }
    [[nodiscard]] int grid_points() const noexcept { return grid_points_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }

    [[nodiscard]] const std::vector<double>& zeros() const noexcept { return zeros_; }
    [[nodiscard]] const std::vector<double>& energies() const noexcept { return energies_; }

    /// Level energy, 1-based.
    [[nodiscard]] double energy(int n) const;

    /// Samples u_n(y_j), 1-based level index.
    [[nodiscard]] std::span<const double> state(int n) const;

    /// Checks that another object was sampled on an equivalent grid.
    [[nodiscard]] bool matches(const RadialGrid& grid) const noexcept;

private:
    int l_;
    int grid_points_;
    double spacing_;
    std::vector<double> zeros_;
    std::vector<double> energies_;
    std::vector<double> samples_;  // level-major, size() x grid_points_
};

/// Samples of u_n on `grid`.
[[nodiscard]] std::vector<double> eigenstate_u(int l, int n, const RadialGrid& grid);

}  // namespace oscwell
