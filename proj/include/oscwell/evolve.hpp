#pragma once

// Unitary propagation of the reduced radial wavefunction u(y) = y phi(y) on
// the fixed domain y in (0, 1), and the observables sampled along a run.
//
// Under y = alpha(t) r and phi = alpha^{-3/2} psi the moving-wall problem
// becomes
//
//   d phi/dt = i (alpha^2/2) [d^2/dy^2 + (2/y) d/dy - l(l+1)/y^2] phi
//              + (Rdot/R) (y d/dy + 3/2) phi.
//
// Substituting phi = u/y gives y d/dy (u/y) = u' - u/y, so the dilation term
// becomes (y d/dy + 1/2) u and the radial Laplacian becomes u'' - l(l+1)u/y^2:
//
//   du/dt = i (alpha^2/2) [u'' - l(l+1) u / y^2] + (Rdot/R) (y du/dy + u/2),
//
// with plain measure dy and u(0) = u(1) = 0. The operator y d/dy + 1/2 is
// anti-symmetric in L^2(dy); it is discretized as (Y D1 + D1 Y)/2 with D1
// the central difference, which keeps the discrete generator exactly
// anti-Hermitian and the Crank-Nicolson step exactly unitary.

#include <complex>
#include <optional>
#include <vector>

#include "oscwell/cavity.hpp"
#include "oscwell/grid.hpp"
#include "oscwell/specfun.hpp"
#include "oscwell/tridiagonal.hpp"

namespace oscwell {

inline constexpr int default_grid_points = 2000;
inline constexpr int default_sample_stride = 10;
inline constexpr double norm_drift_limit = 1e-6;

struct WaveState {
    RadialGrid grid;
    int l = 0;
    double t = 0.0;
    std::vector<complex> u;  // u(y_j), j = 1..N
};

/// Generator M(t) of du/dt = M u:
///   M = i (alpha^2/2) (D2 - diag(l(l+1)/y^2)) + (Rdot/R) (Y D1 + D1 Y)/2.
[[nodiscard]] Tridiagonal build_generator(const RadialGrid& grid, int l,
                                          const CavityDrive& drive, double t);

/// Crank-Nicolson stepper with the generator evaluated at the step midpoint.
/// Holds only per-grid coefficient tables and scratch space; use one instance
/// per thread.
class Propagator {
public:
    Propagator(const RadialGrid& grid, int l, const CavityDrive& drive);

    /// Advances `state` by dt. A negative dt steps backward and exactly
    /// inverts the forward step over the same interval.
    void step(WaveState& state, double dt);

    [[nodiscard]] const CavityDrive& drive() const noexcept { return drive_; }

private:
    RadialGrid grid_;
    int l_;
    CavityDrive drive_;
    std::vector<double> kinetic_diag_;  // -2/h^2 - l(l+1)/y^2
    double kinetic_off_;                // 1/h^2
    std::vector<double> dilation_;      // (Y D1 + D1 Y)/2, super-diagonal
    std::vector<complex> rhs_;
    std::vector<complex> scratch_;
};

/// One Crank-Nicolson step: (I - dt/2 M) u' = (I + dt/2 M) u with
/// M = M(t + dt/2).
[[nodiscard]] WaveState step_cn(WaveState state, const CavityDrive& drive, double dt);

// Observables. All sums use the grid measure h.
[[nodiscard]] double norm(const WaveState& state);
/// <phi|H0|phi> on the fixed domain: 1/2 sum |(u_{j+1}-u_j)/h|^2 h plus the
/// centrifugal term. Equals the discrete quadratic form of the generator.
[[nodiscard]] double energy_fixed(const WaveState& state);
/// alpha^2(t) <phi|H0|phi>, the kinetic energy of the particle in the
/// moving well.
[[nodiscard]] double energy_physical(const WaveState& state, const CavityDrive& drive);
/// <y^2>^{1/2} in the fixed coordinate.
[[nodiscard]] double rms_radius(const WaveState& state);
/// c_n = sum_j u_n(y_j) u_j h for every level in `basis`.
[[nodiscard]] std::vector<complex> project(const WaveState& state, const Eigenbasis& basis);

struct InitialCondition {
    enum class Kind { eigen, plus, minus };
    Kind kind = Kind::eigen;
    int level = 1;  // used by Kind::eigen

    static InitialCondition eigenstate(int n) { return {Kind::eigen, n}; }
    static InitialCondition plus() { return {Kind::plus, 1}; }
    static InitialCondition minus() { return {Kind::minus, 1}; }
};

/// Eigenstate |n, l> or the quasi-stationary combinations (u1 +/- i u2)/sqrt(2),
/// renormalized on the grid, at t = 0.
[[nodiscard]] WaveState make_initial(const InitialCondition& init, const Eigenbasis& basis,
                                     const RadialGrid& grid);

struct TimeSeries {
    int levels = 0;
    std::vector<double> t;
    std::vector<double> norm;
    std::vector<double> e_fixed;
    std::vector<double> u;   // alpha^2 E_fixed
    std::vector<double> rs;  // r.m.s. radius
    std::vector<std::vector<double>> populations;   // |c_n|^2 per sample
    std::vector<std::vector<complex>> amplitudes;   // only if requested

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
    [[nodiscard]] bool empty() const noexcept { return t.empty(); }
};

struct RunOptions {
    double t_max = 0.0;
    double dt = 0.0;  // 0 selects default_time_step(drive.nu())
    int sample_stride = default_sample_stride;
    bool record_amplitudes = false;
};

/// min(1e-4, period / 2000).
[[nodiscard]] double default_time_step(double nu);

/// Propagates `initial` to t_max, sampling observables every sample_stride
/// steps plus the final step. The step is shortened so that a whole number of
/// steps ends exactly at t_max. Throws NumericalError when the norm drifts by
/// more than norm_drift_limit.
[[nodiscard]] TimeSeries evolve_run(const WaveState& initial, const CavityDrive& drive,
                                    const Eigenbasis& basis, const RunOptions& options,
                                    WaveState* final_state = nullptr);

/// Lowest `count` eigenvalues of the discrete static Hamiltonian
/// -1/2 (D2 - diag(l(l+1)/y^2)), by Sturm-sequence bisection.
[[nodiscard]] std::vector<double> static_spectrum(const RadialGrid& grid, int l, int count);

}  // namespace oscwell
