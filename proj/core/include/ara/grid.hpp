#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ara {

/// Discretised feasible price set {min, min+step, ..., <= max}.
///
/// A grid may be constructed in an invalid state so that problem validation
/// can report it; `points()` refuses to enumerate an invalid grid.
class PriceGrid {
public:
    PriceGrid(double min, double max, double step) noexcept : min_(min), max_(max), step_(step) {}

    double min() const noexcept { return min_; }
    double max() const noexcept { return max_; }
    double step() const noexcept { return step_; }

    /// Reason the grid is unusable, or nullopt when it is compact and nonempty.
    std::optional<std::string> defect() const;
    bool valid() const { return !defect().has_value(); }

    /// Grid points, endpoints inclusive, each snapped to a multiple of 1e-9.
    std::vector<double> points() const;
    std::size_t size() const { return points().size(); }

    bool contains(double price, double tolerance = 1e-9) const noexcept {
        return price >= min_ - tolerance && price <= max_ + tolerance;
    }

    friend bool operator==(const PriceGrid&, const PriceGrid&) = default;

private:
    double min_;
    double max_;
    double step_;
};

/// Round to the nearest multiple of 1e-9.
double snap_price(double value) noexcept;

}  // namespace ara
