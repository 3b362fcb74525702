#pragma once

#include <span>
#include <string>
#include <vector>

#include "oscwell/evolve.hpp"

namespace oscwell {

/// Numerical settings shared by every point of a sweep.
struct SimParams {
    int grid_points = default_grid_points;
    double dt = 0.0;      // 0: default_time_step(nu)
    double t_max = 0.0;   // 0: scan_window(eps, nu, l)
    int sample_stride = default_sample_stride;
    int levels = default_basis_size;
    int threads = 0;      // 0: std::thread::hardware_concurrency()
};

struct ScanPoint {
    double nu = 0.0;
    double eps = 0.0;
    int l = 0;
    double umax_scaled = 0.0;  // max_t alpha^-2 U = max_t E_fixed
    double t_at_max = 0.0;
    bool at_window_end = false;
    // run metadata
    double t_max = 0.0;
    double dt = 0.0;
    int grid_points = 0;
    bool ok = true;
    std::string error;
};

struct ScanResult {
    std::vector<ScanPoint> points;
};

struct UMax {
    double value = 0.0;
    double time = 0.0;
    /// The maximum sits on the last sample, so the window may have been too
    /// short to contain the peak.
    bool at_window_end = false;
};

/// Maximum of the E_fixed column and where it occurs.
[[nodiscard]] UMax umax_of_run(const TimeSeries& series);

/// max(1.5 * 2 pi / Omega, 50 * 2 pi / nu), with Omega the two-level Rabi
/// frequency of levels 1, 2 (evaluated even away from resonance).
[[nodiscard]] double scan_window(double eps, double nu, int l);

/// One sweep point started from |1, l>.
[[nodiscard]] ScanPoint run_point(double nu, double eps, int l, const SimParams& params);

/// Evaluates every frequency on a worker pool. Points are independent and
/// stored by index, so the result does not depend on scheduling. A failing
/// point is marked !ok and the sweep continues.
[[nodiscard]] ScanResult run_scan(std::span<const double> freqs, double eps, int l,
                                  const SimParams& params);

/// General sweep over explicit (nu, eps) pairs.
[[nodiscard]] ScanResult run_scan(std::span<const std::pair<double, double>> nu_eps, int l,
                                  const SimParams& params);

struct BreitWignerFit {
    double nu0 = 0.0;
    double gamma = 0.0;
    double strength = 0.0;  // C
    double baseline = 0.0;  // E1, held fixed
    double residual_norm = 0.0;
    int iterations = 0;

    [[nodiscard]] double operator()(double nu) const;
    /// baseline + 4 C / Gamma^2
    [[nodiscard]] double peak() const;
};

/// Least-squares fit of baseline + C / ((nu - nu0)^2 + Gamma^2/4) with the
/// baseline fixed. Starts from the sampled peak and its half-prominence
/// width and refines by Levenberg-Marquardt to relative parameter change
/// 1e-8. Needs at least 5 points.
[[nodiscard]] BreitWignerFit breit_wigner_fit(std::span<const double> nu,
                                              std::span<const double> value, double baseline);

/// Fit to the successful points of a sweep; the baseline is E_{1,l}.
[[nodiscard]] BreitWignerFit breit_wigner_fit(std::span<const ScanPoint> points);

/// Successful points on the monotone flanks of the local maximum reached by
/// climbing from the sample nearest `centre`. Strong drives put neighbouring
/// multi-photon resonances inside a sweep; they must not enter the fit of
/// the main line.
[[nodiscard]] std::vector<ScanPoint> main_peak(std::span<const ScanPoint> points, double centre);

struct WidthStudy {
    std::vector<double> eps;
    std::vector<double> gamma;
    std::vector<BreitWignerFit> fits;
    std::vector<ScanResult> scans;
    double slope = 0.0;      // Gamma = slope * eps
    double r_squared = 0.0;
};

struct WidthScanGrid {
    int points = 17;
    /// Half-width of each frequency window in units of the two-level
    /// estimate Gamma = 4 Omega.
    double half_span = 1.5;
};

/// Resonance width against amplitude: one frequency sweep around omega21 per
/// eps, a Breit-Wigner fit each, and a least-squares line through the origin.
[[nodiscard]] WidthStudy width_vs_epsilon(std::span<const double> eps_list, int l,
                                          const SimParams& params,
                                          const WidthScanGrid& grid = {});

}  // namespace oscwell
