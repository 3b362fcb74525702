#pragma once

namespace oscwell {

/// Sinusoidal wall trajectory R(t) = 1 + epsilon sin(nu t) in units where the
/// rest radius is 1. alpha(t) = 1/R(t) is the dilation factor that maps the
/// moving ball onto the fixed unit ball.
///
/// epsilon = 0 is accepted and describes a static wall.
class CavityDrive {
public:
    CavityDrive(double epsilon, double nu);

    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] double period() const noexcept;

    [[nodiscard]] double radius(double t) const noexcept;
    [[nodiscard]] double alpha(double t) const noexcept;
    /// Rdot/R.
    [[nodiscard]] double wall_log_velocity(double t) const noexcept;

private:
    double epsilon_;
    double nu_;
};

[[nodiscard]] inline double alpha(const CavityDrive& drive, double t) { return drive.alpha(t); }
[[nodiscard]] inline double wall_log_velocity(const CavityDrive& drive, double t) {
    return drive.wall_log_velocity(t);
}

}  // namespace oscwell
