#include "oscwell/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "oscwell/error.hpp"

namespace oscwell {
namespace {

double centrifugal(int l, double y) { return l * (l + 1) / (y * y); }

// Super-diagonal entry (i, i+1) of (Y D1 + D1 Y)/2 with D1 u_i = (u_{i+1} - u_{i-1})/(2h):
// (y_i + y_{i+1})/(4h) = (2i + 3)/4 for y_i = (i+1)h. Independent of h.
double dilation_entry(int i) { return (2.0 * i + 3.0) / 4.0; }

void check_state(const WaveState& state) {
    if (state.u.size() != static_cast<std::size_t>(state.grid.size())) {
        throw std::invalid_argument("WaveState: sample count does not match the grid");
    }
}

}  // namespace

Tridiagonal build_generator(const RadialGrid& grid, int l, const CavityDrive& drive, double t) {
    const double a = 0.5 * drive.alpha(t) * drive.alpha(t);
    const double b = drive.wall_log_velocity(t);
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw NumericalError("build_generator: non-finite coefficients at t = " + std::to_string(t));
    }
    const int n = grid.size();
    const double h = grid.spacing();
    const double off = 1.0 / (h * h);
    Tridiagonal m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        m.diag[i] = complex(0.0, a * (-2.0 * off - centrifugal(l, grid.y(i))));
        if (i + 1 < n) {
            m.upper[i] = complex(b * dilation_entry(i), a * off);
            m.lower[i + 1] = complex(-b * dilation_entry(i), a * off);
        }
    }
    return m;
}

Propagator::Propagator(const RadialGrid& grid, int l, const CavityDrive& drive)
    : grid_(grid),
      l_(l),
      drive_(drive),
      kinetic_diag_(grid.size()),
      kinetic_off_(1.0 / (grid.spacing() * grid.spacing())),
      dilation_(grid.size()),
      rhs_(grid.size()),
      scratch_(grid.size()) {
    if (l < 0 || l > max_angular_momentum) {
        throw std::invalid_argument("Propagator: angular momentum out of range");
    }
    for (int i = 0; i < grid.size(); ++i) {
        kinetic_diag_[i] = -2.0 * kinetic_off_ - centrifugal(l, grid.y(i));
        dilation_[i] = dilation_entry(i);
    }
}

void Propagator::step(WaveState& state, double dt) {
    if (!(state.grid == grid_) || state.l != l_) {
        throw std::invalid_argument("Propagator: state does not match grid or angular momentum");
    }
    check_state(state);
    const double tm = state.t + 0.5 * dt;
    const double alpha = drive_.alpha(tm);
    // dt/2 M = i ka K + kb A
    const double ka = 0.25 * dt * alpha * alpha;
    const double kb = 0.5 * dt * drive_.wall_log_velocity(tm);

    // Fused right-hand side and Thomas forward sweep; lhs = I - dt/2 M is
    // never stored. Row i of dt/2 M: lower (-kb A_{i-1}, ka off),
    // diag (0, ka K_ii), upper (kb A_i, ka off).
    const int n = grid_.size();
    auto& u = state.u;
    const double off = ka * kinetic_off_;
    complex c_prev(0.0, 0.0);  // scratch: modified super-diagonal
    complex d_prev(0.0, 0.0);  // rhs_: modified right-hand side
    for (int i = 0; i < n; ++i) {
        const double kd = ka * kinetic_diag_[i];
        complex r = u[i] * complex(1.0, kd);
        complex lower(0.0, 0.0);
        complex upper(0.0, 0.0);
        if (i + 1 < n) {
            const complex up(kb * dilation_[i], off);
            r += up * u[i + 1];
            upper = -up;
        }
        if (i > 0) {
            const complex lo(-kb * dilation_[i - 1], off);
            r += lo * u[i - 1];
            lower = -lo;
        }
        const complex pivot = complex(1.0, -kd) - lower * c_prev;
        const double mag = pivot.real() * pivot.real() + pivot.imag() * pivot.imag();
        if (mag == 0.0) {
            throw NumericalError("Crank-Nicolson step: singular system at row " + std::to_string(i));
        }
        const complex inv(pivot.real() / mag, -pivot.imag() / mag);
        c_prev = upper * inv;
        d_prev = (r - lower * d_prev) * inv;
        scratch_[i] = c_prev;
        rhs_[i] = d_prev;
    }
    u[n - 1] = rhs_[n - 1];
    for (int i = n - 1; i-- > 0;) {
        u[i] = rhs_[i] - scratch_[i] * u[i + 1];
    }
    state.t += dt;
}

WaveState step_cn(WaveState state, const CavityDrive& drive, double dt) {
    Propagator prop(state.grid, state.l, drive);
    prop.step(state, dt);
    return state;
}

double norm(const WaveState& state) {
    double s = 0.0;
    for (const auto& z : state.u) {
        s += std::norm(z);
    }
    return s * state.grid.spacing();
}

double energy_fixed(const WaveState& state) {
    check_state(state);
    const double h = state.grid.spacing();
    const auto& u = state.u;
    const std::size_t n = u.size();
    double kinetic = std::norm(u.front()) + std::norm(u.back());  // boundary links to u = 0
    double potential = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        kinetic += std::norm(u[i + 1] - u[i]);
    }
    if (state.l > 0) {
        for (std::size_t i = 0; i < n; ++i) {
            potential += centrifugal(state.l, state.grid.y(static_cast<int>(i))) * std::norm(u[i]);
        }
    }
    return 0.5 * kinetic / h + 0.5 * potential * h;
}

double energy_physical(const WaveState& state, const CavityDrive& drive) {
    const double a = drive.alpha(state.t);
    return a * a * energy_fixed(state);
}

double rms_radius(const WaveState& state) {
    check_state(state);
    double s = 0.0;
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        const double y = state.grid.y(static_cast<int>(i));
        s += y * y * std::norm(state.u[i]);
    }
    return std::sqrt(s * state.grid.spacing());
}

std::vector<complex> project(const WaveState& state, const Eigenbasis& basis) {
    check_state(state);
    if (basis.l() != state.l) {
        throw std::invalid_argument("project: basis angular momentum differs from the state's");
    }
    if (!basis.matches(state.grid)) {
        throw std::invalid_argument("project: basis sampled on a different grid");
    }
    const double h = state.grid.spacing();
    std::vector<complex> c(basis.size());
    for (int n = 1; n <= basis.size(); ++n) {
        const auto un = basis.state(n);
        double re = 0.0;
        double im = 0.0;
        for (std::size_t j = 0; j < un.size(); ++j) {
            re += un[j] * state.u[j].real();
            im += un[j] * state.u[j].imag();
        }
        c[n - 1] = complex(re * h, im * h);
    }
    return c;
}

WaveState make_initial(const InitialCondition& init, const Eigenbasis& basis,
                       const RadialGrid& grid) {
    if (!basis.matches(grid)) {
        throw std::invalid_argument("make_initial: basis sampled on a different grid");
    }
    WaveState state{grid, basis.l(), 0.0, std::vector<complex>(grid.size())};
    switch (init.kind) {
        case InitialCondition::Kind::eigen: {
            const auto un = basis.state(init.level);
            std::transform(un.begin(), un.end(), state.u.begin(),
                           [](double v) { return complex(v, 0.0); });
            break;
        }
        case InitialCondition::Kind::plus:
        case InitialCondition::Kind::minus: {
            if (basis.size() < 2) {
                throw std::invalid_argument("make_initial: quasi-stationary start needs two levels");
            }
            const double sign = init.kind == InitialCondition::Kind::plus ? 1.0 : -1.0;
            const auto u1 = basis.state(1);
            const auto u2 = basis.state(2);
            for (std::size_t j = 0; j < state.u.size(); ++j) {
                state.u[j] = complex(u1[j], sign * u2[j]) / std::numbers::sqrt2;
            }
            break;
        }
        default:
            throw std::invalid_argument("make_initial: unknown initial-state kind");
    }
    const double scale = 1.0 / std::sqrt(norm(state));
    for (auto& z : state.u) {
        z *= scale;
    }
    return state;
}

double default_time_step(double nu) {
    return std::min(1e-4, (2.0 * std::numbers::pi / nu) / 2000.0);
}

namespace {

void record(TimeSeries& ts, const WaveState& state, const CavityDrive& drive,
            const Eigenbasis& basis, bool amplitudes) {
    const double a = drive.alpha(state.t);
    const double e = energy_fixed(state);
    ts.t.push_back(state.t);
    ts.norm.push_back(norm(state));
    ts.e_fixed.push_back(e);
    ts.u.push_back(a * a * e);
    ts.rs.push_back(rms_radius(state));
    auto c = project(state, basis);
    std::vector<double> p(c.size());
    std::transform(c.begin(), c.end(), p.begin(), [](complex z) { return std::norm(z); });
    ts.populations.push_back(std::move(p));
    if (amplitudes) {
        ts.amplitudes.push_back(std::move(c));
    }
}

}  // namespace

TimeSeries evolve_run(const WaveState& initial, const CavityDrive& drive, const Eigenbasis& basis,
                      const RunOptions& options, WaveState* final_state) {
    check_state(initial);
    if (!(options.t_max >= 0.0)) {
        throw std::invalid_argument("evolve_run: t_max must be non-negative");
    }
    if (options.sample_stride < 1) {
        throw std::invalid_argument("evolve_run: sample_stride must be >= 1");
    }
    double dt = options.dt > 0.0 ? options.dt : default_time_step(drive.nu());
    const auto steps = static_cast<long long>(std::ceil(options.t_max / dt * (1.0 - 1e-12)));
    if (steps > 0) {
        dt = options.t_max / static_cast<double>(steps);
    }
    if (std::abs(norm(initial) - 1.0) > norm_drift_limit) {
        throw std::invalid_argument("evolve_run: initial state is not normalized");
    }

    TimeSeries ts;
    ts.levels = basis.size();
    WaveState state = initial;
    const double t0 = state.t;
    Propagator prop(state.grid, state.l, drive);
    record(ts, state, drive, basis, options.record_amplitudes);
    for (long long k = 1; k <= steps; ++k) {
        prop.step(state, dt);
        // Pin the clock to the schedule so no rounding accumulates in t.
        state.t = t0 + static_cast<double>(k) * dt;
        if (k % options.sample_stride == 0 || k == steps) {
            record(ts, state, drive, basis, options.record_amplitudes);
            const double drift = std::abs(ts.norm.back() - 1.0);
            if (drift > norm_drift_limit) {
                std::ostringstream msg;
                msg << "evolve_run: norm drift " << drift << " at t = " << state.t
                    << " exceeds " << norm_drift_limit << " (time step too large?)";
                throw NumericalError(msg.str());
            }
        }
    }
    if (final_state != nullptr) {
        *final_state = std::move(state);
    }
    return ts;
}

std::vector<double> static_spectrum(const RadialGrid& grid, int l, int count) {
    const int n = grid.size();
    if (count < 1 || count > n) {
        throw std::invalid_argument("static_spectrum: count out of range");
    }
    const double h = grid.spacing();
    const double off = -0.5 / (h * h);
    const double off2 = off * off;
    std::vector<double> diag(n);
    double upper_bound = 0.0;
    for (int i = 0; i < n; ++i) {
        diag[i] = 1.0 / (h * h) + 0.5 * centrifugal(l, grid.y(i));
        upper_bound = std::max(upper_bound, diag[i] + 2.0 * std::abs(off));
    }
    // Number of eigenvalues below x.
    auto below = [&](double x) {
        int negatives = 0;
        double q = diag[0] - x;
        for (int i = 0;;) {
            if (q < 0.0) {
                ++negatives;
            }
            if (++i == n) {
                break;
            }
            if (q == 0.0) {
                q = 1e-300;
            }
            q = diag[i] - x - off2 / q;
        }
        return negatives;
    };
    std::vector<double> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        double lo = 0.0;
        double hi = upper_bound;
        while (hi - lo > 1e-14 * std::max(1.0, lo)) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (below(mid) > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace oscwell
