#pragma once

#include <stdexcept>

namespace oscwell {

/// Uniform interior mesh of the fixed domain (0, 1): y_j = j h for
/// j = 1..N with h = 1/(N+1). The endpoints carry the Dirichlet condition
/// u = 0 and are not stored.
class RadialGrid {
public:
    explicit RadialGrid(int points) : points_(points) {
        if (points < 3) {
            throw std::invalid_argument("RadialGrid: need at least 3 interior points");
        }
        spacing_ = 1.0 / (points + 1);
    }

    [[nodiscard]] int size() const noexcept { return points_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }

    /// Coordinate of the 0-based storage index i (grid label j = i + 1).
    [[nodiscard]] double y(int i) const noexcept { return (i + 1) * spacing_; }

    friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

private:
    int points_;
    double spacing_;
};

}  // namespace oscwell
