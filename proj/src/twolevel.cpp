#include "oscwell/twolevel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oscwell/perturb.hpp"
#include "oscwell/quadrature.hpp"
#include "oscwell/specfun.hpp"

namespace oscwell {
namespace {

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("two-level model: eps must lie in (0, 1)");
    }
}

// (1 - sqrt(1 - eps^2)) / eps without cancellation at small eps.
double averaged_drive(double eps) { return eps / (1.0 + std::sqrt(1.0 - eps * eps)); }

}  // namespace

double rabi_frequency(double eps, double omega21) {
    return rabi_frequency(eps, omega21, 4.0 / 3.0);
}

double rabi_frequency(double eps, double omega21, double coupling) {
    check_eps(eps);
    return std::abs(coupling) * averaged_drive(eps) * omega21;
}

TwoLevelModel make_two_level_model(double eps, int l) {
    check_eps(eps);
    TwoLevelModel m;
    m.l = l;
    m.eps = eps;
    m.e1 = eigen_energy(l, 1);
    m.e2 = eigen_energy(l, 2);
    m.omega21 = m.e2 - m.e1;
    m.omega = l == 0 ? rabi_frequency(eps, m.omega21)
                     : rabi_frequency(eps, m.omega21, dilation_bracket(l, 2, 1));
    m.rabi_period = 2.0 * std::numbers::pi / m.omega;
    m.drive_period = 2.0 * std::numbers::pi / m.omega21;
    return m;
}

double two_level_energy(const TwoLevelModel& model, double t) {
    const auto p = two_level_populations(model, t);
    const double a = model.drive().alpha(t);
    return a * a * (model.e1 * p[0] + model.e2 * p[1]);
}

std::array<double, 2> two_level_populations(const TwoLevelModel& model, double t) {
    const double c = std::cos(model.omega * t);
    const double s = std::sin(model.omega * t);
    return {c * c, s * s};
}

double reduce_angle(double theta) {
    double r = std::remainder(theta, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) {
        r += 2.0 * std::numbers::pi;
    }
    return r;
}

FloquetPhase floquet_phase(double eps, double e1, double e2) {
    check_eps(eps);
    const double omega21 = e2 - e1;
    const double ratio = 4.0 * averaged_drive(eps) / 3.0;
    FloquetPhase out{};
    out.raw_plus = -2.0 * std::numbers::pi * (e2 / omega21 + ratio);
    out.raw_minus = -2.0 * std::numbers::pi * (e2 / omega21 - ratio);
    out.plus = reduce_angle(out.raw_plus);
    out.minus = reduce_angle(out.raw_minus);
    return out;
}

Matrix2c averaged_coupling_numeric(double eps, int l) {
    check_eps(eps);
    const std::array<double, 2> e = {eigen_energy(l, 1), eigen_energy(l, 2)};
    const double omega21 = e[1] - e[0];
    const CavityDrive drive(eps, omega21);
    const double period = drive.period();
    const std::array<std::array<double, 2>, 2> dil = {{
        {dilation_bracket(l, 1, 1), dilation_bracket(l, 1, 2)},
        {dilation_bracket(l, 2, 1), dilation_bracket(l, 2, 2)},
    }};
    QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-15;
    Matrix2c w{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double wij = e[i] - e[j];
            const auto integrand = [&](double t) {
                const double a = drive.alpha(t);
                const complex v((i == j ? (a * a - 1.0) * e[i] : 0.0),
                                drive.wall_log_velocity(t) * dil[i][j]);
                return complex(0.0, -1.0) * v * std::polar(1.0, wij * t);
            };
            w[i][j] = integrate_complex(integrand, 0.0, period, opts) / period;
        }
    }
    return w;
}

}  // namespace oscwell
