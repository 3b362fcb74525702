#pragma once

// First-order time-dependent perturbation theory in the static eigenbasis.
//
// In the fixed domain H(t) = H0 + H1(t) with
//   H1 = (alpha^2 - 1) H0 + i (Rdot/R) (y d/dy + 3/2),
// and c_n(t) = <n|phi(t)> exp(i E_n t). Starting from |k>:
//   c1_k(t) = i E_k int_0^t (1 - alpha^2) dt'
//   c1_n(t) = -D_nk int_0^t exp(i w_nk t') Rdot/R dt'     (n != k)
// where w_nk = E_n - E_k and D_nk is dilation_matrix_element().

#include <complex>
#include <span>
#include <vector>

#include "oscwell/cavity.hpp"
#include "oscwell/specfun.hpp"

namespace oscwell {

using complex = std::complex<double>;

/// <bra|(y d/dy + 3/2)|ket> = int_0^1 u_bra (y u_ket' + u_ket/2) dy, by
/// adaptive quadrature. Antisymmetric in (bra, ket); the diagonal vanishes
/// because int y u u' dy = -1/2 for a normalized u with u(0) = u(1) = 0.
[[nodiscard]] double dilation_bracket(int l, int bra, int ket);

/// Coupling coefficient D_nk = <k|(y d/dy + 3/2)|n> entering c1_n. For l = 0
/// and n != k it equals (-1)^(n-k) 2nk/(n^2-k^2); the diagonal vanishes,
/// which is the cancellation of the 3i/2 term by the diagonal part of y.p.
[[nodiscard]] double dilation_matrix_element(int l, int n, int k);

/// int_t0^t1 exp(i omega t) Rdot/R dt by adaptive quadrature (rel. tol 1e-10).
[[nodiscard]] complex drive_fourier_integral(const CavityDrive& drive, double omega, double t0,
                                             double t1);

/// Closed form of int_0^t exp(i omega t') Rdot/R dt' for a drive at
/// nu = omega:
///   omega t/eps + cos(omega t) - 1
///   - 2 (sqrt(1-eps^2)/eps) [atan((eps + tan(omega t/2))/sqrt(1-eps^2)) - atan(eps/sqrt(1-eps^2))]
///   + i [sin(omega t) - ln(1 + eps sin(omega t))/eps],
/// with the first arctangent continued across the poles of tan so that the
/// result is continuous in t.
[[nodiscard]] complex resonance_integral_closed_form(double eps, double omega, double t);

struct PerturbationRun {
    int k = 1;
    int l = 0;
    int levels = default_basis_size;
    std::vector<double> energies;               // E_n, n = 1..levels
    std::vector<double> t;
    std::vector<std::vector<complex>> first;    // c1_n(t), [sample][n-1]

    /// c0_n + c1_n at sample i.
    [[nodiscard]] std::vector<complex> coefficients(std::size_t i) const;
};

/// c1_n(t) at each of `times` (ascending, first >= 0).
[[nodiscard]] PerturbationRun first_order_coefficients(int k, const CavityDrive& drive,
                                                       std::span<const double> times, int l = 0,
                                                       int levels = default_basis_size);

struct PerturbativeEnergy {
    std::vector<double> t;
    std::vector<double> e_fixed;  // sum |c_n|^2 E_n / sum |c_n|^2
    std::vector<double> u;        // alpha^2 e_fixed
};

/// Energy from c0 + c1. The first-order coefficients are not exactly
/// normalized, so the weighted sum is divided by sum |c_n|^2.
[[nodiscard]] PerturbativeEnergy perturbative_energy(const PerturbationRun& run,
                                                     const CavityDrive& drive);

[[nodiscard]] PerturbativeEnergy perturbative_energy(int k, const CavityDrive& drive,
                                                     std::span<const double> times, int l = 0,
                                                     int levels = default_basis_size);

}  // namespace oscwell
