#include "oscwell/cavity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oscwell {

CavityDrive::CavityDrive(double epsilon, double nu) : epsilon_(epsilon), nu_(nu) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("CavityDrive: epsilon must lie in [0, 1)");
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw std::invalid_argument("CavityDrive: nu must be positive and finite");
    }
}

double CavityDrive::period() const noexcept { return 2.0 * std::numbers::pi / nu_; }

double CavityDrive::radius(double t) const noexcept { return 1.0 + epsilon_ * std::sin(nu_ * t); }

double CavityDrive::alpha(double t) const noexcept { return 1.0 / radius(t); }

double CavityDrive::wall_log_velocity(double t) const noexcept {
    return epsilon_ * nu_ * std::cos(nu_ * t) / radius(t);
}

}  // namespace oscwell
