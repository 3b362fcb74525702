#include "oscwell/perturb.hpp"

#include <cmath>
#include <stdexcept>

#include "oscwell/quadrature.hpp"

namespace oscwell {

double dilation_bracket(int l, int bra, int ket) {
    const auto ub = radial_eigenfunction(l, bra);
    const auto uk = radial_eigenfunction(l, ket);
    QuadratureOptions opts;
    opts.rel_tol = 1e-13;
    opts.abs_tol = 1e-15;
    return integrate(
        [&](double y) { return ub(y) * (y * uk.derivative(y) + 0.5 * uk(y)); }, 0.0, 1.0, opts);
}

double dilation_matrix_element(int l, int n, int k) { return dilation_bracket(l, k, n); }

complex drive_fourier_integral(const CavityDrive& drive, double omega, double t0, double t1) {
    QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-14;
    return integrate_complex(
        [&](double t) {
            return std::polar(drive.wall_log_velocity(t), omega * t);
        },
        t0, t1, opts);
}

complex resonance_integral_closed_form(double eps, double omega, double t) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("resonance_integral_closed_form: eps must lie in (0, 1)");
    }
    const double s = std::sqrt(1.0 - eps * eps);
    const double wt = omega * t;
    // atan((eps + tan x)/s) continued through the poles of tan equals
    // x + d(x), where d is the angle of (s cos x, sin x + eps cos x) rotated
    // back by x. The rotated first component stays positive for eps < 1, so
    // d lies in (-pi/2, pi/2) and needs no branch bookkeeping.
    const double x = 0.5 * wt;
    const double c = std::cos(x);
    const double sn = std::sin(x);
    const double d = std::atan2(sn * c * (1.0 - s) + eps * c * c, s * c * c + sn * sn + eps * sn * c);
    const double one_minus_s = eps * eps / (1.0 + s);
    const double re = 2.0 * x * one_minus_s / eps + std::cos(wt) - 1.0 -
                      2.0 * (s / eps) * (d - std::atan(eps / s));
    const double im = std::sin(wt) - std::log1p(eps * std::sin(wt)) / eps;
    return {re, im};
}

std::vector<complex> PerturbationRun::coefficients(std::size_t i) const {
    std::vector<complex> c = first.at(i);
    c[k - 1] += 1.0;
    return c;
}

PerturbationRun first_order_coefficients(int k, const CavityDrive& drive,
                                         std::span<const double> times, int l, int levels) {
    if (k < 1 || k > levels) {
        throw std::invalid_argument("first_order_coefficients: initial level outside the basis");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
            throw std::invalid_argument("first_order_coefficients: times must ascend from >= 0");
        }
    }
    PerturbationRun run;
    run.k = k;
    run.l = l;
    run.levels = levels;
    for (int n = 1; n <= levels; ++n) {
        run.energies.push_back(eigen_energy(l, n));
    }
    std::vector<double> coupling(levels);
    for (int n = 1; n <= levels; ++n) {
        coupling[n - 1] = n == k ? 0.0 : dilation_matrix_element(l, n, k);
    }

    QuadratureOptions opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-14;
    const double ek = run.energies[k - 1];
    std::vector<complex> running(levels);
    double previous = 0.0;
    for (const double t : times) {
        running[k - 1] += complex(0.0, ek) * integrate(
            [&](double s) {
                const double a = drive.alpha(s);
                return 1.0 - a * a;
            },
            previous, t, opts);
        for (int n = 1; n <= levels; ++n) {
            if (n == k) {
                continue;
            }
            const double w = run.energies[n - 1] - ek;
            running[n - 1] -= coupling[n - 1] * drive_fourier_integral(drive, w, previous, t);
        }
        run.t.push_back(t);
        run.first.push_back(running);
        previous = t;
    }
    return run;
}

PerturbativeEnergy perturbative_energy(const PerturbationRun& run, const CavityDrive& drive) {
    PerturbativeEnergy out;
    for (std::size_t i = 0; i < run.t.size(); ++i) {
        const auto c = run.coefficients(i);
        double weight = 0.0;
        double energy = 0.0;
        for (std::size_t n = 0; n < c.size(); ++n) {
            weight += std::norm(c[n]);
            energy += std::norm(c[n]) * run.energies[n];
        }
        const double e = energy / weight;
        const double a = drive.alpha(run.t[i]);
        out.t.push_back(run.t[i]);
        out.e_fixed.push_back(e);
        out.u.push_back(a * a * e);
    }
    return out;
}

PerturbativeEnergy perturbative_energy(int k, const CavityDrive& drive,
                                       std::span<const double> times, int l, int levels) {
    return perturbative_energy(first_order_coefficients(k, drive, times, l, levels), drive);
}

}  // namespace oscwell
