#include "oscwell/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "oscwell/error.hpp"
#include "oscwell/twolevel.hpp"

namespace oscwell {

UMax umax_of_run(const TimeSeries& series) {
    if (series.empty()) {
        throw std::invalid_argument("umax_of_run: empty series");
    }
    const auto it = std::max_element(series.e_fixed.begin(), series.e_fixed.end());
    const auto i = static_cast<std::size_t>(it - series.e_fixed.begin());
    return {*it, series.t[i], series.size() > 1 && i + 1 == series.size()};
}

double scan_window(double eps, double nu, int l) {
    const auto model = make_two_level_model(eps, l);
    return std::max(1.5 * model.rabi_period, 50.0 * 2.0 * std::numbers::pi / nu);
}

ScanPoint run_point(double nu, double eps, int l, const SimParams& params) {
    ScanPoint p;
    p.nu = nu;
    p.eps = eps;
    p.l = l;
    p.grid_points = params.grid_points;
    try {
        const CavityDrive drive(eps, nu);
        const RadialGrid grid(params.grid_points);
        const Eigenbasis basis(l, params.levels, grid);
        p.t_max = params.t_max > 0.0 ? params.t_max : scan_window(eps, nu, l);
        p.dt = params.dt > 0.0 ? params.dt : default_time_step(nu);
        RunOptions opts;
        opts.t_max = p.t_max;
        opts.dt = p.dt;
        opts.sample_stride = params.sample_stride;
        const auto series =
            evolve_run(make_initial(InitialCondition::eigenstate(1), basis, grid), drive, basis, opts);
        const auto m = umax_of_run(series);
        p.umax_scaled = m.value;
        p.t_at_max = m.time;
        p.at_window_end = m.at_window_end;
    } catch (const std::exception& e) {
        p.ok = false;
        p.error = e.what();
        p.umax_scaled = std::numeric_limits<double>::quiet_NaN();
        p.t_at_max = std::numeric_limits<double>::quiet_NaN();
    }
    return p;
}

ScanResult run_scan(std::span<const std::pair<double, double>> nu_eps, int l,
                    const SimParams& params) {
    ScanResult result;
    result.points.resize(nu_eps.size());
    unsigned workers = params.threads > 0 ? static_cast<unsigned>(params.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, nu_eps.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < nu_eps.size(); i = next++) {
            result.points[i] = run_point(nu_eps[i].first, nu_eps[i].second, l, params);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    return result;
}

ScanResult run_scan(std::span<const double> freqs, double eps, int l, const SimParams& params) {
    if (!std::is_sorted(freqs.begin(), freqs.end())) {
        throw std::invalid_argument("run_scan: frequencies must be ascending");
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(freqs.size());
    for (const double nu : freqs) {
        pairs.emplace_back(nu, eps);
    }
    return run_scan(std::span<const std::pair<double, double>>(pairs), l, params);
}

double BreitWignerFit::operator()(double nu) const {
    const double d = nu - nu0;
    return baseline + strength / (d * d + 0.25 * gamma * gamma);
}

double BreitWignerFit::peak() const { return baseline + 4.0 * strength / (gamma * gamma); }

namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Gaussian elimination with partial pivoting; false when singular.
bool solve3(Mat3 a, Vec3 b, Vec3& x) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) {
                piv = r;
            }
        }
        if (a[piv][c] == 0.0) {
            return false;
        }
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < 3; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < 3; ++k) {
                a[r][k] -= f * a[c][k];
            }
            b[r] -= f * b[c];
        }
    }
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < 3; ++k) {
            s -= a[r][k] * x[k];
        }
        x[r] = s / a[r][r];
    }
    return true;
}

double sum_squares(std::span<const double> nu, std::span<const double> value,
                   const BreitWignerFit& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double r = value[i] - f(nu[i]);
        s += r * r;
    }
    return s;
}

// Width at half prominence by linear interpolation between samples.
double half_prominence_width(std::span<const double> nu, std::span<const double> value,
                             std::size_t peak, double baseline) {
    const double half = baseline + 0.5 * (value[peak] - baseline);
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = left;
    for (std::size_t i = peak; i-- > 0;) {
        if (value[i] <= half) {
            left = nu[i] + (half - value[i]) * (nu[i + 1] - nu[i]) / (value[i + 1] - value[i]);
            break;
        }
    }
    for (std::size_t i = peak + 1; i < nu.size(); ++i) {
        if (value[i] <= half) {
            right = nu[i - 1] + (value[i - 1] - half) * (nu[i] - nu[i - 1]) / (value[i - 1] - value[i]);
            break;
        }
    }
    if (std::isfinite(left) && std::isfinite(right)) {
        return right - left;
    }
    if (std::isfinite(left)) {
        return 2.0 * (nu[peak] - left);
    }
    if (std::isfinite(right)) {
        return 2.0 * (right - nu[peak]);
    }
    return nu.back() - nu.front();
}

}  // namespace

BreitWignerFit breit_wigner_fit(std::span<const double> nu, std::span<const double> value,
                                double baseline) {
    if (nu.size() != value.size()) {
        throw std::invalid_argument("breit_wigner_fit: size mismatch");
    }
    if (nu.size() < 5) {
        throw std::invalid_argument("breit_wigner_fit: need at least 5 points");
    }
    const auto peak_it = std::max_element(value.begin(), value.end());
    const auto peak = static_cast<std::size_t>(peak_it - value.begin());
    const double prominence = *peak_it - baseline;
    if (!(prominence > 1e-12 * std::max(1.0, std::abs(baseline)))) {
        throw NumericalError("breit_wigner_fit: data show no peak above the baseline");
    }

    BreitWignerFit fit;
    fit.baseline = baseline;
    fit.nu0 = nu[peak];
    fit.gamma = half_prominence_width(nu, value, peak, baseline);
    if (!(fit.gamma > 0.0)) {
        throw NumericalError("breit_wigner_fit: degenerate peak width");
    }
    fit.strength = prominence * fit.gamma * fit.gamma / 4.0;

    double lambda = 1e-3;
    double sse = sum_squares(nu, value, fit);
    constexpr int max_iterations = 1000;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        Mat3 jtj{};
        Vec3 jtr{};
        for (std::size_t i = 0; i < nu.size(); ++i) {
            const double d = nu[i] - fit.nu0;
            const double den = d * d + 0.25 * fit.gamma * fit.gamma;
            const Vec3 g = {2.0 * fit.strength * d / (den * den),
                            -0.5 * fit.strength * fit.gamma / (den * den), 1.0 / den};
            const double r = value[i] - fit(nu[i]);
            for (int a = 0; a < 3; ++a) {
                jtr[a] += g[a] * r;
                for (int b = 0; b < 3; ++b) {
                    jtj[a][b] += g[a] * g[b];
                }
            }
        }
        bool accepted = false;
        Vec3 step{};
        while (lambda < 1e12) {
            Mat3 damped = jtj;
            for (int a = 0; a < 3; ++a) {
                damped[a][a] *= 1.0 + lambda;
            }
            if (solve3(damped, jtr, step)) {
                BreitWignerFit trial = fit;
                trial.nu0 += step[0];
                trial.gamma += step[1];
                trial.strength += step[2];
                const double trial_sse = sum_squares(nu, value, trial);
                if (std::isfinite(trial_sse) && trial_sse <= sse) {
                    fit = trial;
                    sse = trial_sse;
                    lambda = std::max(lambda / 10.0, 1e-15);
                    accepted = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        fit.iterations = iter;
        const Vec3 params = {fit.nu0, fit.gamma, fit.strength};
        bool small = true;
        for (int a = 0; a < 3; ++a) {
            if (std::abs(step[a]) > 1e-8 * std::max(std::abs(params[a]), 1e-300)) {
                small = false;
            }
        }
        if (!accepted || small || sse == 0.0) {
            // No downhill step exists at any damping: a (local) minimum.
            fit.gamma = std::abs(fit.gamma);
            fit.residual_norm = std::sqrt(sse);
            return fit;
        }
    }
    throw NumericalError("breit_wigner_fit: no convergence after 1000 iterations");
}

BreitWignerFit breit_wigner_fit(std::span<const ScanPoint> points) {
    if (points.empty()) {
        throw std::invalid_argument("breit_wigner_fit: no points");
    }
    std::vector<double> nu;
    std::vector<double> value;
    for (const auto& p : points) {
        if (p.ok && std::isfinite(p.umax_scaled)) {
            nu.push_back(p.nu);
            value.push_back(p.umax_scaled);
        }
    }
    return breit_wigner_fit(nu, value, eigen_energy(points.front().l, 1));
}

std::vector<ScanPoint> main_peak(std::span<const ScanPoint> points, double centre) {
    std::vector<ScanPoint> good;
    for (const auto& p : points) {
        if (p.ok && std::isfinite(p.umax_scaled)) {
            good.push_back(p);
        }
    }
    if (good.empty()) {
        return good;
    }
    auto top = std::min_element(good.begin(), good.end(), [centre](const auto& a, const auto& b) {
        return std::abs(a.nu - centre) < std::abs(b.nu - centre);
    });
    // Climb to the local maximum, then walk down both flanks.
    for (;;) {
        if (top != good.begin() && std::prev(top)->umax_scaled > top->umax_scaled) {
            --top;
        } else if (std::next(top) != good.end() && std::next(top)->umax_scaled > top->umax_scaled) {
            ++top;
        } else {
            break;
        }
    }
    auto lo = top;
    while (lo != good.begin() && std::prev(lo)->umax_scaled < lo->umax_scaled) {
        --lo;
    }
    auto hi = top;
    while (std::next(hi) != good.end() && std::next(hi)->umax_scaled < hi->umax_scaled) {
        ++hi;
    }
    return {lo, std::next(hi)};
}

WidthStudy width_vs_epsilon(std::span<const double> eps_list, int l, const SimParams& params,
                            const WidthScanGrid& grid) {
    if (eps_list.empty()) {
        throw std::invalid_argument("width_vs_epsilon: empty amplitude list");
    }
    if (grid.points < 5) {
        throw std::invalid_argument("width_vs_epsilon: need at least 5 frequencies per sweep");
    }
    WidthStudy study;
    for (const double eps : eps_list) {
        const auto model = make_two_level_model(eps, l);
        const double half = grid.half_span * 4.0 * model.omega;
        std::vector<double> freqs(grid.points);
        for (int i = 0; i < grid.points; ++i) {
            freqs[i] = model.omega21 - half + 2.0 * half * i / (grid.points - 1);
        }
        auto scan = run_scan(freqs, eps, l, params);
        const auto fit = breit_wigner_fit(main_peak(scan.points, model.omega21));
        study.eps.push_back(eps);
        study.gamma.push_back(fit.gamma);
        study.fits.push_back(fit);
        study.scans.push_back(std::move(scan));
    }
    double sxy = 0.0;
    double sxx = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < study.eps.size(); ++i) {
        sxy += study.eps[i] * study.gamma[i];
        sxx += study.eps[i] * study.eps[i];
        mean += study.gamma[i];
    }
    mean /= static_cast<double>(study.gamma.size());
    study.slope = sxy / sxx;
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < study.eps.size(); ++i) {
        const double r = study.gamma[i] - study.slope * study.eps[i];
        ss_res += r * r;
        ss_tot += (study.gamma[i] - mean) * (study.gamma[i] - mean);
    }
    study.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return study;
}

}  // namespace oscwell
