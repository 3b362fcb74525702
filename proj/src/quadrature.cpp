#include "oscwell/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "oscwell/error.hpp"

namespace oscwell {
namespace {

// Kronrod nodes on [0, 1] of the symmetric rule; odd entries are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <typename T>
struct Segment {
    double a;
    double b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename T, typename F>
Segment<T> apply_rule(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T kronrod = f(center) * kKronrodWeights[7];
    T gauss = f(center) * kGaussWeights[3];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const T sum = f(center - dx) + f(center + dx);
        kronrod += sum * kKronrodWeights[i];
        if (i % 2 == 1) {
            gauss += sum * kGaussWeights[i / 2];
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

template <typename T, typename F>
T adaptive(const F& f, double a, double b, const QuadratureOptions& opts) {
    if (a == b) {
        return T{};
    }
    std::priority_queue<Segment<T>> heap;
    auto first = apply_rule<T>(f, a, b);
    T total = first.value;
    double error = first.error;
    heap.push(first);
    int intervals = 1;
    while (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (intervals >= opts.max_intervals) {
            const auto& worst = heap.top();
            std::ostringstream msg;
            msg.precision(17);
            msg << "quadrature did not converge on [" << a << ", " << b
                << "]; worst subinterval [" << worst.a << ", " << worst.b
                << "] with error estimate " << worst.error;
            throw NumericalError(msg.str());
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = apply_rule<T>(f, worst.a, mid);
        auto right = apply_rule<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to drop the incremental cancellation error.
    T sum{};
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    return adaptive<double>(f, a, b, opts);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                               double b, const QuadratureOptions& opts) {
    return adaptive<std::complex<double>>(f, a, b, opts);
}

}  // namespace oscwell
