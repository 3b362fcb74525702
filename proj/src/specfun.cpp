#include "oscwell/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oscwell/grid.hpp"

namespace oscwell {
namespace {

void check_order(int l) {
    if (l < 0 || l > max_angular_momentum) {
        throw std::invalid_argument("angular momentum must be in [0, 3], got " +
                                    std::to_string(l));
    }
}

// x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
double series_j(int l, double x) {
    double lead = 1.0;
    for (int i = 1; i <= l; ++i) {
        lead *= x / (2 * i + 1);
    }
    const double q = -0.5 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= q / (k * (2.0 * l + 2.0 * k + 1.0));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return lead * sum;
}

}  // namespace

double spherical_bessel_j(int l, double x) {
    check_order(l);
    if (!(x >= 0.0)) {
        throw std::domain_error("spherical_bessel_j: negative argument");
    }
    if (x < l + 1.0) {
        return series_j(l, x);
    }
    const double s = std::sin(x);
    const double c = std::cos(x);
    double jm = s / x;
    if (l == 0) {
        return jm;
    }
    double j = s / (x * x) - c / x;
    for (int k = 1; k < l; ++k) {
        const double next = (2 * k + 1) / x * j - jm;
        jm = j;
        j = next;
    }
    return j;
}

double spherical_bessel_j_derivative(int l, double x) {
    check_order(l);
    if (l == 0) {
        return -spherical_bessel_j(1, x);
    }
    if (x == 0.0) {
        return l == 1 ? 1.0 / 3.0 : 0.0;
    }
    return spherical_bessel_j(l - 1, x) - (l + 1) / x * spherical_bessel_j(l, x);
}

double bessel_zero(int l, int n) {
    check_order(l);
    if (n < 1) {
        throw std::invalid_argument("bessel_zero: level index must be >= 1");
    }
    if (l == 0) {
        return n * std::numbers::pi;
    }
    // Zeros of j_l interlace with those of j_{l-1}: exactly one root of j_l
    // lies between consecutive roots of j_{l-1}.
    double lo = bessel_zero(l - 1, n);
    double hi = bessel_zero(l - 1, n + 1);
    double flo = spherical_bessel_j(l, lo);
    while (hi - lo > 1e-14 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fmid = spherical_bessel_j(l, mid);
        if (fmid == 0.0) {
            return mid;
        }
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    double x = 0.5 * (lo + hi);
    // One Newton polish.
    const double d = spherical_bessel_j_derivative(l, x);
    if (d != 0.0) {
        const double polished = x - spherical_bessel_j(l, x) / d;
        if (std::abs(polished - x) < 1e-10) {
            x = polished;
        }
    }
    return x;
}

namespace {
// At a zero of j_l, j_{l+1}(x) = -j_l'(x), so the continuum normalization
// sqrt(2)/|j_{l+1}(x)| needs no order beyond the supported range.
double normalization(int l, double zero) {
    return std::sqrt(2.0) / std::abs(spherical_bessel_j_derivative(l, zero));
}
}  // namespace

double eigen_energy(int l, int n) {
    const double x = bessel_zero(l, n);
    return 0.5 * x * x;
}

double RadialEigenfunction::operator()(double y) const {
    return norm * y * spherical_bessel_j(l, zero * y);
}

double RadialEigenfunction::derivative(double y) const {
    const double x = zero * y;
    return norm * (spherical_bessel_j(l, x) + x * spherical_bessel_j_derivative(l, x));
}

RadialEigenfunction radial_eigenfunction(int l, int n) {
    const double x = bessel_zero(l, n);
    return {l, x, normalization(l, x)};
}

double eigenfunction_u(int l, int n, double y) { return radial_eigenfunction(l, n)(y); }

double eigenfunction_u_derivative(int l, int n, double y) {
    return radial_eigenfunction(l, n).derivative(y);
}

std::vector<double> eigenstate_u(int l, int n, const RadialGrid& grid) {
    const auto f = radial_eigenfunction(l, n);
    std::vector<double> out(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        out[i] = f(grid.y(i));
    }
    return out;
}

Eigenbasis::Eigenbasis(int l, int levels, const RadialGrid& grid)
    : l_(l), grid_points_(grid.size()), spacing_(grid.spacing()) {
    check_order(l);
    if (levels < 1) {
        throw std::invalid_argument("Eigenbasis: need at least one level");
    }
    zeros_.reserve(levels);
    energies_.reserve(levels);
    samples_.reserve(static_cast<std::size_t>(levels) * grid_points_);
    for (int n = 1; n <= levels; ++n) {
        zeros_.push_back(bessel_zero(l, n));
        energies_.push_back(0.5 * zeros_.back() * zeros_.back());
        const auto u = eigenstate_u(l, n, grid);
        samples_.insert(samples_.end(), u.begin(), u.end());
    }
}

double Eigenbasis::energy(int n) const {
    if (n < 1 || n > size()) {
        throw std::out_of_range("Eigenbasis: level " + std::to_string(n) + " not retained");
    }
    return energies_[n - 1];
}

std::span<const double> Eigenbasis::state(int n) const {
    if (n < 1 || n > size()) {
        throw std::out_of_range("Eigenbasis: level " + std::to_string(n) + " not retained");
    }
    return {samples_.data() + static_cast<std::size_t>(n - 1) * grid_points_,
            static_cast<std::size_t>(grid_points_)};
}

bool Eigenbasis::matches(const RadialGrid& grid) const noexcept {
    return grid.size() == grid_points_ && grid.spacing() == spacing_;
}

}  // namespace oscwell
