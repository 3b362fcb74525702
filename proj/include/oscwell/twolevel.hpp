#pragma once

// Period-averaged two-level model of the resonance nu = E2 - E1.
//
// Averaging the coupled amplitude equations over one drive period leaves
// dc/dt = W c with W11 = W22 = 0 and W21 = -W12 = Omega, so that
// c1 = cos(Omega t), c2 = sin(Omega t) from |1>, and (|1> +/- i|2>)/sqrt(2)
// evolve only by the phase exp(-/+ i Omega t).

#include <array>
#include <complex>

#include "oscwell/cavity.hpp"

namespace oscwell {

using complex = std::complex<double>;

/// Omega = 4 (1 - sqrt(1 - eps^2)) / (3 eps) * omega21 (l = 0 coupling 4/3).
[[nodiscard]] double rabi_frequency(double eps, double omega21);

/// Same average with an arbitrary |<2|(y d/dy + 3/2)|1>|:
/// Omega = |D21| (1 - sqrt(1 - eps^2)) / eps * omega21.
[[nodiscard]] double rabi_frequency(double eps, double omega21, double coupling);

struct TwoLevelModel {
    int l = 0;
    double e1 = 0.0;
    double e2 = 0.0;
    double omega21 = 0.0;
    double eps = 0.0;
    double omega = 0.0;         // Rabi frequency
    double rabi_period = 0.0;   // 2 pi / Omega
    double drive_period = 0.0;  // 2 pi / omega21

    /// The resonant drive nu = omega21.
    [[nodiscard]] CavityDrive drive() const { return {eps, omega21}; }
};

/// Model for levels 1, 2 of angular momentum l. For l = 0 Omega is the
/// closed form above; other l use the quadrature coupling.
[[nodiscard]] TwoLevelModel make_two_level_model(double eps, int l = 0);

/// alpha^2(t) (E1 cos^2 Omega t + E2 sin^2 Omega t).
[[nodiscard]] double two_level_energy(const TwoLevelModel& model, double t);

/// (cos^2 Omega t, sin^2 Omega t).
[[nodiscard]] std::array<double, 2> two_level_populations(const TwoLevelModel& model, double t);

struct FloquetPhase {
    double raw_plus;   // -2 pi [E2/omega21 + Omega/omega21]
    double raw_minus;  // -2 pi [E2/omega21 - Omega/omega21]
    double plus;       // reduced to (-pi, pi]
    double minus;
};

/// One-drive-period phase of the quasi-stationary states,
/// theta = -2 pi [E2/omega21 +/- 4 (1 - sqrt(1 - eps^2)) / (3 eps)].
[[nodiscard]] FloquetPhase floquet_phase(double eps, double e1, double e2);

/// Wraps an angle to (-pi, pi].
[[nodiscard]] double reduce_angle(double theta);

using Matrix2c = std::array<std::array<complex, 2>, 2>;

/// W_ij = (1/T) int_0^T (-i) V_ij(t) exp(i w_ij t) dt over one drive period
/// T = 2 pi / omega21, with V_ij = (alpha^2 - 1) E_i delta_ij
/// + i (Rdot/R) <i|(y d/dy + 3/2)|j>, computed by quadrature.
[[nodiscard]] Matrix2c averaged_coupling_numeric(double eps, int l = 0);

}  // namespace oscwell
